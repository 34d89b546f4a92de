#pragma once

#include "renormlab/analysis.hpp"
#include "renormlab/config.hpp"
#include "renormlab/error.hpp"
#include "renormlab/fixedpoint.hpp"
#include "renormlab/horseshoe.hpp"
#include "renormlab/map.hpp"
#include "renormlab/numeric.hpp"
#include "renormlab/piece.hpp"
#include "renormlab/quadrature.hpp"
#include "renormlab/registry.hpp"
#include "renormlab/renorm.hpp"
#include "renormlab/scaling.hpp"
#include "renormlab/scaling_data.hpp"
#include "renormlab/slowconv.hpp"
