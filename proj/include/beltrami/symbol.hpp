#ifndef BELTRAMI_SYMBOL_HPP
#define BELTRAMI_SYMBOL_HPP

#include <array>
#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace beltrami {

/// Classification of symbols. The kind fixes how a symbol differentiates.
enum class SymbolKind {
  independent,  // x, y, z
  dependent,    // u, v, w
  jet,          // u_x ... w_z
  second_jet,   // u_xx ... w_zz, only produced transiently inside prolongation
  radical,      // R = sqrt(u^2 + v^2 + w^2)
  parameter,    // eps, a, b, C1..C10 and the ODE state names
  formal        // f, f_u, f_v, f_w and the generator coefficients zeta..psi with first derivatives
};

struct Symbol {
  int id = -1;
  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

struct SymbolInfo {
  std::string name;
  SymbolKind kind;
  int dep = -1;    // jets: dependent variable index 0..2
  int axis = -1;   // jets: derivative axis 0..2
  int axis2 = -1;  // second jets
  int family = -1; // formal: 0 = f, 1..6 = zeta, eta, theta, phi, lambda, psi
  int wrt = -1;    // formal: base index of the derivative (x..w = 0..5), -1 for the value
};

namespace sym {

inline constexpr int base_count = 6;
inline constexpr int jet_begin = 6;
inline constexpr int jet2_begin = 15;
inline constexpr int radical_id = 33;
inline constexpr int param_begin = 34;
inline constexpr int f_begin = 53;
inline constexpr int gen_begin = 57;
inline constexpr int count = 99;

inline constexpr Symbol x{0}, y{1}, z{2}, u{3}, v{4}, w{5};
inline constexpr Symbol R{radical_id};
inline constexpr Symbol eps{34}, a{35}, b{36};
inline constexpr Symbol g{47}, h{48}, k{49}, beta{50}, gamma{51}, r{52};
inline constexpr Symbol f{53}, f_u{54}, f_v{55}, f_w{56};

constexpr Symbol base(int i) { return Symbol{i}; }
constexpr Symbol independent(int axis) { return Symbol{axis}; }
constexpr Symbol dependent(int dep) { return Symbol{3 + dep}; }
constexpr Symbol jet(int dep, int axis) { return Symbol{jet_begin + 3 * dep + axis}; }
constexpr Symbol C(int i) { return Symbol{param_begin + 2 + i}; }  // C(1) .. C(10)

constexpr int pair_index(int i, int j) {
  if (i > j) std::swap(i, j);
  constexpr std::array<std::array<int, 3>, 3> idx{{{0, 1, 2}, {1, 3, 4}, {2, 4, 5}}};
  return idx[i][j];
}
constexpr Symbol second_jet(int dep, int i, int j) {
  return Symbol{jet2_begin + 6 * dep + pair_index(i, j)};
}

/// Generator coefficient family 0..5 (zeta..psi); wrt = -1 gives the value symbol.
constexpr Symbol generator(int comp, int wrt = -1) { return Symbol{gen_begin + 7 * comp + wrt + 1}; }

}  // namespace sym

class SymbolTable {
 public:
  static const SymbolTable& instance() {
    static const SymbolTable table;
    return table;
  }

  const SymbolInfo& info(Symbol s) const {
    if (s.id < 0 || s.id >= static_cast<int>(infos_.size()))
      throw std::out_of_range("invalid symbol id " + std::to_string(s.id));
    return infos_[s.id];
  }

  std::optional<Symbol> lookup(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end()) return std::nullopt;
    return Symbol{it->second};
  }

  int size() const { return static_cast<int>(infos_.size()); }

 private:
  SymbolTable() {
    const char* base_names[] = {"x", "y", "z", "u", "v", "w"};
    for (int i = 0; i < 3; ++i) add({base_names[i], SymbolKind::independent});
    for (int i = 3; i < 6; ++i) add({base_names[i], SymbolKind::dependent, i - 3});
    const char* deps[] = {"u", "v", "w"};
    const char* axes[] = {"x", "y", "z"};
    for (int d = 0; d < 3; ++d)
      for (int a = 0; a < 3; ++a) {
        SymbolInfo s{std::string(deps[d]) + "_" + axes[a], SymbolKind::jet, d, a};
        add(s);
      }
    const std::array<std::pair<int, int>, 6> pairs{{{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}}};
    for (int d = 0; d < 3; ++d)
      for (auto [i, j] : pairs) {
        SymbolInfo s{std::string(deps[d]) + "_" + axes[i] + axes[j], SymbolKind::second_jet, d, i, j};
        add(s);
      }
    add({"R", SymbolKind::radical});
    add({"eps", SymbolKind::parameter});
    add({"a", SymbolKind::parameter});
    add({"b", SymbolKind::parameter});
    for (int i = 1; i <= 10; ++i) add({"C" + std::to_string(i), SymbolKind::parameter});
    for (const char* n : {"g", "h", "k", "beta", "gamma", "r"}) add({n, SymbolKind::parameter});
    add({"f", SymbolKind::formal, -1, -1, -1, 0, -1});
    for (int i = 0; i < 3; ++i)
      add({std::string("f_") + deps[i], SymbolKind::formal, -1, -1, -1, 0, 3 + i});
    const char* comps[] = {"zeta", "eta", "theta", "phi", "lambda", "psi"};
    for (int c = 0; c < 6; ++c) {
      add({comps[c], SymbolKind::formal, -1, -1, -1, c + 1, -1});
      for (int b = 0; b < 6; ++b)
        add({std::string(comps[c]) + "_" + base_names[b], SymbolKind::formal, -1, -1, -1, c + 1, b});
    }
    if (size() != sym::count) throw std::logic_error("symbol table layout mismatch");
  }

  void add(SymbolInfo s) {
    by_name_.emplace(s.name, static_cast<int>(infos_.size()));
    infos_.push_back(std::move(s));
  }

  std::vector<SymbolInfo> infos_;
  std::unordered_map<std::string, int> by_name_;
};

inline const SymbolInfo& info(Symbol s) { return SymbolTable::instance().info(s); }
inline const std::string& name(Symbol s) { return info(s).name; }
inline SymbolKind kind(Symbol s) { return info(s).kind; }

inline Symbol symbol(std::string_view n) {
  auto s = SymbolTable::instance().lookup(n);
  if (!s) throw std::invalid_argument("unknown symbol '" + std::string(n) + "'");
  return *s;
}

inline bool is_base(Symbol s) { return s.id >= 0 && s.id < sym::base_count; }
inline bool is_jet(Symbol s) { return kind(s) == SymbolKind::jet; }

}  // namespace beltrami

#endif  // BELTRAMI_SYMBOL_HPP
