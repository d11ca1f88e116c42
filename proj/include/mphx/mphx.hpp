/******************************************************************************
This source code is licensed under the MIT license found in the
LICENSE file in the root directory of this source tree.
*******************************************************************************/

#pragma once

#include "mphx/cost_model.hpp"
#include "mphx/error.hpp"
#include "mphx/explorer.hpp"
#include "mphx/export.hpp"
#include "mphx/flattening.hpp"
#include "mphx/generators.hpp"
#include "mphx/metrics.hpp"
#include "mphx/rational.hpp"
#include "mphx/report_io.hpp"
#include "mphx/spec_string.hpp"
#include "mphx/table2.hpp"
#include "mphx/topo_model.hpp"
