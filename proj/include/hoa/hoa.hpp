#pragma once

// Everything in one include.

#include "hoa/acceptance.hpp"
#include "hoa/analysis.hpp"
#include "hoa/automaton.hpp"
#include "hoa/bounds.hpp"
#include "hoa/formula.hpp"
#include "hoa/games.hpp"
#include "hoa/generators.hpp"
#include "hoa/hoa_io.hpp"
#include "hoa/symbolic.hpp"
#include "hoa/transforms.hpp"
