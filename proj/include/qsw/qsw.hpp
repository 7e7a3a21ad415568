#pragma once

// Umbrella header for the whole library.

#include "qsw/errors.hpp"
#include "qsw/matrix.hpp"
#include "qsw/eigen.hpp"
#include "qsw/quantum.hpp"
#include "qsw/switch.hpp"
#include "qsw/collisions.hpp"
#include "qsw/concurrence.hpp"
#include "qsw/experiments.hpp"
#include "qsw/config.hpp"
#include "qsw/report.hpp"
