#pragma once

// Umbrella header for the bigraph independence library.
#include "bgi/bigraph.hpp"
#include "bgi/common.hpp"
#include "bgi/compat.hpp"
#include "bgi/cumulants.hpp"
#include "bgi/hilbert.hpp"
#include "bgi/io.hpp"
#include "bgi/matrix_model.hpp"
#include "bgi/ncps.hpp"
#include "bgi/partition.hpp"
#include "bgi/weingarten.hpp"
