#pragma once

#include "slidesum/bench.hpp"
#include "slidesum/dispatch.hpp"
#include "slidesum/fasta.hpp"
#include "slidesum/hash.hpp"
#include "slidesum/kmer.hpp"
#include "slidesum/lanes.hpp"
#include "slidesum/minimizer.hpp"
#include "slidesum/operators.hpp"
#include "slidesum/seed_table.hpp"
#include "slidesum/sequential.hpp"
#include "slidesum/simd_u64.hpp"
#include "slidesum/sink.hpp"
