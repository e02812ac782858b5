#include "baselines.hpp"

void register_external_baselines(gegamma::BenchRegistry&) {}
