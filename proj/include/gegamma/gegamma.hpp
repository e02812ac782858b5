#pragma once

#include "gegamma/special_functions.hpp"
#include "gegamma/squeeze.hpp"
#include "gegamma/uniform_source.hpp"
#include "gegamma/samplers.hpp"
#include "gegamma/verification.hpp"
#include "gegamma/bench.hpp"
