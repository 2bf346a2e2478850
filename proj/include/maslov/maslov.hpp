#pragma once

#include "errors.hpp"
#include "tolerances.hpp"
#include "algebra.hpp"
#include "jacobi.hpp"
#include "jordan.hpp"
#include "complex.hpp"
#include "shilov.hpp"
#include "group.hpp"
#include "indices.hpp"
#include "dynamics.hpp"
#include "sampling.hpp"
