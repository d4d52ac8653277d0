#ifndef BELTRAMI_TESTS_RANDOM_EXPR_HPP
#define BELTRAMI_TESTS_RANDOM_EXPR_HPP

#include <random>
#include <vector>

#include "beltrami/expr.hpp"
#include "beltrami/poly.hpp"

// readable gtest failure output
namespace beltrami {
inline void PrintTo(const Poly& p, std::ostream* os) { *os << to_string(p); }
inline void PrintTo(const Expression& e, std::ostream* os) { *os << to_string(e); }
}  // namespace beltrami

namespace beltrami::testing {

// Random expression trees over the given symbols; depth bounds the nesting.
class ExprGen {
 public:
  ExprGen(std::uint64_t seed, std::vector<Symbol> symbols, bool functions = true)
      : rng_(seed), symbols_(std::move(symbols)), functions_(functions) {}

  Expression operator()(int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : (functions_ ? 6 : 5));
    switch (pick(rng_)) {
      case 0: return constant();
      case 1: return Expression(symbols_[index(symbols_.size())]);
      case 2: return (*this)(depth - 1) + (*this)(depth - 1);
      case 3: return (*this)(depth - 1) * (*this)(depth - 1);
      case 4: return (*this)(depth - 1) - (*this)(depth - 1);
      case 5: return pow((*this)(depth - 1), 1 + static_cast<long>(index(3)));
      default: {
        Expression a = (*this)(depth - 1);
        switch (index(3)) {
          case 0: return sin(a);
          case 1: return cos(a);
          default: return exp(a * rational(1, 4));
        }
      }
    }
  }

  Expression constant() {
    std::uniform_int_distribution<long> num(-9, 9), den(1, 4);
    return Expression(make_rational(num(rng_), den(rng_)));
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  std::mt19937_64 rng_;
  std::vector<Symbol> symbols_;
  bool functions_;
};

}  // namespace beltrami::testing

#endif  // BELTRAMI_TESTS_RANDOM_EXPR_HPP
