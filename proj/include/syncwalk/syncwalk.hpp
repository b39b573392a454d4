#pragma once

// Umbrella header.

#include "syncwalk/automaton.hpp"
#include "syncwalk/closed_forms.hpp"
#include "syncwalk/errors.hpp"
#include "syncwalk/generators.hpp"
#include "syncwalk/io.hpp"
#include "syncwalk/markov.hpp"
#include "syncwalk/montecarlo.hpp"
#include "syncwalk/rational.hpp"
#include "syncwalk/sync.hpp"
