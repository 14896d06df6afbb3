#pragma once

#include "bench.hpp"
#include "checker.hpp"
#include "error.hpp"
#include "grover.hpp"
#include "miter.hpp"
#include "netlist.hpp"
#include "oracle.hpp"
#include "qsim.hpp"
