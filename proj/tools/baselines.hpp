#pragma once

#include "gegamma/bench.hpp"

/// Hook for comparing external generators in bench1/bench2. Registered names
/// become valid --algo values. The default definition registers nothing;
/// configure with -DGEGAMMA_BASELINES_SOURCE=path/to/file.cpp to supply one.
void register_external_baselines(gegamma::BenchRegistry& registry);
