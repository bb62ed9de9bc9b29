#pragma once

#include "e2qes/errors.hpp"
#include "e2qes/algebra.hpp"
#include "e2qes/time_function.hpp"
#include "e2qes/model.hpp"
#include "e2qes/dyson.hpp"
#include "e2qes/special.hpp"
#include "e2qes/polynomial.hpp"
#include "e2qes/qes.hpp"
#include "e2qes/metric_model.hpp"
#include "e2qes/invariants.hpp"
#include "e2qes/observables.hpp"
#include "e2qes/sampling.hpp"
#include "e2qes/io.hpp"
#include "e2qes/verify.hpp"
