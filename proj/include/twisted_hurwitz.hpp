#pragma once

#include "twisted_hurwitz/rational.hpp"
#include "twisted_hurwitz/perm_core.hpp"
#include "twisted_hurwitz/factorization_count.hpp"
#include "twisted_hurwitz/graph_enum.hpp"
#include "twisted_hurwitz/tropical_covers.hpp"
#include "twisted_hurwitz/radical.hpp"
#include "twisted_hurwitz/series.hpp"
#include "twisted_hurwitz/feynman.hpp"
#include "twisted_hurwitz/fock.hpp"
#include "twisted_hurwitz/io.hpp"
