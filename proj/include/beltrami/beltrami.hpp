#ifndef BELTRAMI_BELTRAMI_HPP
#define BELTRAMI_BELTRAMI_HPP

#include "bases.hpp"
#include "expr.hpp"
#include "fixtures.hpp"
#include "jet.hpp"
#include "liealg.hpp"
#include "linalg.hpp"
#include "parse.hpp"
#include "poly.hpp"
#include "rational.hpp"
#include "serialize.hpp"
#include "solutions.hpp"
#include "symbol.hpp"
#include "symmetry.hpp"

#endif  // BELTRAMI_BELTRAMI_HPP
