#pragma once

#include "streamla/types.hpp"
#include "streamla/error.hpp"
#include "streamla/rng.hpp"
#include "streamla/mat.hpp"
#include "streamla/cube.hpp"
#include "streamla/arith.hpp"
#include "streamla/backend.hpp"
#include "streamla/generators.hpp"
#include "streamla/decomp.hpp"
#include "streamla/matfun.hpp"
#include "streamla/elemwise.hpp"
#include "streamla/stats.hpp"
#include "streamla/sigproc.hpp"
#include "streamla/io.hpp"
#include "streamla/interop.hpp"
