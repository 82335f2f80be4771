// Convenience umbrella: pulls in the whole library.
#pragma once

#include "coint.hpp"
#include "critical_values.hpp"
#include "dataset.hpp"
#include "distributions.hpp"
#include "errors.hpp"
#include "pipeline.hpp"
#include "regress.hpp"
#include "rng.hpp"
#include "svg.hpp"
#include "table.hpp"
#include "timeseries.hpp"
#include "unitroot.hpp"
#include "varmod.hpp"
