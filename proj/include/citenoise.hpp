#pragma once

#include "citenoise/audit.hpp"
#include "citenoise/citation_model.hpp"
#include "citenoise/error.hpp"
#include "citenoise/fixtures.hpp"
#include "citenoise/io.hpp"
#include "citenoise/noise_metrics.hpp"
#include "citenoise/simulator.hpp"
