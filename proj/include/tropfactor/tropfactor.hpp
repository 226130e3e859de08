#pragma once

#include "tropfactor/integer.hpp"
#include "tropfactor/lattice.hpp"
#include "tropfactor/signed_algebra.hpp"
#include "tropfactor/partition.hpp"
#include "tropfactor/segment_decomposer.hpp"
#include "tropfactor/pipeline.hpp"
#include "tropfactor/maxplus.hpp"
#include "tropfactor/expression_parser.hpp"
#include "tropfactor/json_io.hpp"
#include "tropfactor/svg.hpp"
