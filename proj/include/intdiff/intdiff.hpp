#ifndef INTDIFF_INTDIFF_HPP
#define INTDIFF_INTDIFF_HPP

// Exact calculator for the algebra of polynomial integro-differential
// operators over Q and its action on Q[x].

#include "intdiff/action.hpp"
#include "intdiff/b1.hpp"
#include "intdiff/centralizer.hpp"
#include "intdiff/lang.hpp"
#include "intdiff/operator.hpp"
#include "intdiff/poly.hpp"
#include "intdiff/rational.hpp"
#include "intdiff/units.hpp"

#endif
