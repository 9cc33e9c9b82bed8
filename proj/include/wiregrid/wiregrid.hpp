#pragma once

#include "wiregrid/budget.hpp"
#include "wiregrid/complementarity.hpp"
#include "wiregrid/config.hpp"
#include "wiregrid/config_io.hpp"
#include "wiregrid/diffraction.hpp"
#include "wiregrid/errors.hpp"
#include "wiregrid/montecarlo.hpp"
#include "wiregrid/philox.hpp"
#include "wiregrid/scenarios.hpp"
#include "wiregrid/validation.hpp"
