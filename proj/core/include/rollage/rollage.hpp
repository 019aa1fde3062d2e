#ifndef ROLLAGE_ROLLAGE_HPP
#define ROLLAGE_ROLLAGE_HPP

// Umbrella header.

#include "rollage/ar_fit.hpp"
#include "rollage/autocovariance.hpp"
#include "rollage/criteria.hpp"
#include "rollage/durbin.hpp"
#include "rollage/errors.hpp"
#include "rollage/io.hpp"
#include "rollage/model_spec.hpp"
#include "rollage/nlrc.hpp"
#include "rollage/rolling_average.hpp"
#include "rollage/simulate.hpp"
#include "rollage/time_series.hpp"

#endif
