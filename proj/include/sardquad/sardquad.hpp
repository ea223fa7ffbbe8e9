#pragma once

#include "charpoly.hpp"
#include "combinatorics.hpp"
#include "discrete_operator.hpp"
#include "error_norm.hpp"
#include "errors.hpp"
#include "integrands.hpp"
#include "kernel.hpp"
#include "linalg.hpp"
#include "oracle.hpp"
#include "polynomial.hpp"
#include "roots.hpp"
#include "rule_io.hpp"
#include "scalar.hpp"
#include "solver.hpp"
