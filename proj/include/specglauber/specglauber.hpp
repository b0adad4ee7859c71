#pragma once

#include "specglauber/bounds.hpp"
#include "specglauber/corpus.hpp"
#include "specglauber/errors.hpp"
#include "specglauber/extended.hpp"
#include "specglauber/gibbs.hpp"
#include "specglauber/glauber.hpp"
#include "specglauber/graph.hpp"
#include "specglauber/harness.hpp"
#include "specglauber/influence_saw.hpp"
#include "specglauber/io.hpp"
#include "specglauber/matrix.hpp"
#include "specglauber/model.hpp"
#include "specglauber/parallel.hpp"
#include "specglauber/recursion.hpp"
#include "specglauber/rng.hpp"
#include "specglauber/saw_tree.hpp"
#include "specglauber/spectral.hpp"
