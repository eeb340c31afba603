#pragma once

#include "qgrav/analytic.hpp"
#include "qgrav/bodies.hpp"
#include "qgrav/calibration.hpp"
#include "qgrav/data_files.hpp"
#include "qgrav/dormand_prince.hpp"
#include "qgrav/errors.hpp"
#include "qgrav/gravity.hpp"
#include "qgrav/numerical_orbit.hpp"
#include "qgrav/observation.hpp"
#include "qgrav/precession_result.hpp"
#include "qgrav/report.hpp"
