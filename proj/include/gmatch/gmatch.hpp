#pragma once

#include "gmatch/batch_matcher.hpp"
#include "gmatch/bench.hpp"
#include "gmatch/error.hpp"
#include "gmatch/fasta.hpp"
#include "gmatch/index_io.hpp"
#include "gmatch/query_gen.hpp"
#include "gmatch/range_search.hpp"
#include "gmatch/sequence.hpp"
#include "gmatch/suffix_array.hpp"
#include "gmatch/suffix_tree.hpp"
