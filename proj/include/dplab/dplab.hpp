#pragma once

#include "dplab/characteristics.hpp"
#include "dplab/config.hpp"
#include "dplab/csvio.hpp"
#include "dplab/evolution.hpp"
#include "dplab/extrema.hpp"
#include "dplab/functionals.hpp"
#include "dplab/grid.hpp"
#include "dplab/multipeakon.hpp"
#include "dplab/profiles.hpp"
#include "dplab/quadrature.hpp"
#include "dplab/rng.hpp"
#include "dplab/scenarios.hpp"
#include "dplab/spectral.hpp"
#include "dplab/stability.hpp"
#include "dplab/svg.hpp"
