#pragma once

// Solver library for the two-player alternating competitive search game on a
// finite, possibly time-varying Markov chain: belief algebra, chain
// classification, finite-horizon max-min values with certified brackets for
// the infinite-horizon value, discounted values, strategy evaluation and
// simulation, and optimality-region geometry over the belief simplex.

#include "searchgame/chain.hpp"
#include "searchgame/errors.hpp"
#include "searchgame/evaluate.hpp"
#include "searchgame/examples.hpp"
#include "searchgame/game.hpp"
#include "searchgame/regions.hpp"
#include "searchgame/solver.hpp"
#include "searchgame/spec_io.hpp"
#include "searchgame/strategy.hpp"
