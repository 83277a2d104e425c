#pragma once

#include "eulerap/arithmetic.hpp"
#include "eulerap/bernoulli.hpp"
#include "eulerap/characters.hpp"
#include "eulerap/engine.hpp"
#include "eulerap/error.hpp"
#include "eulerap/lseries.hpp"
#include "eulerap/oracle.hpp"
#include "eulerap/sieve.hpp"
#include "eulerap/witt.hpp"
