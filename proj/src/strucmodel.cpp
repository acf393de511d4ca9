#include "nsfrag/strucmodel.hpp"

#include "nsfrag/error.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nsfrag::strucmodel {

FinIndex::FinIndex(int size_, int w_) : size(size_), w(w_) {
  if (size < 1 || size > 16) throw InvalidArgument("index size must be in [1, 16]");
  if (w < 0 || w >= size) throw InvalidArgument("w must be an element of the index set");
}

// ---- ultrafilter ---------------------------------------------------------

PrincipalUltrafilter::PrincipalUltrafilter(FinIndex index) : index_(index) {
  const IndexSet all = index_.all();
  lookup_.assign(static_cast<std::size_t>(all) + 1, 0);
  const IndexSet point = IndexSet{1} << index_.w;
  for (IndexSet s = 0; s <= all; ++s) {
    if (s & point) {
      members_.push_back(s);
      lookup_[s] = 1;
    }
  }
}

bool PrincipalUltrafilter::is_upward_closed() const {
  const IndexSet all = index_.all();
  for (IndexSet m : members_)
    for (IndexSet s = 0; s <= all; ++s)
      if ((s & m) == m && !contains(s)) return false;
  return true;
}

bool PrincipalUltrafilter::is_closed_under_intersection() const {
  for (IndexSet a : members_)
    for (IndexSet b : members_)
      if (!contains(a & b)) return false;
  return !contains(0);
}

bool PrincipalUltrafilter::is_ultra() const {
  const IndexSet all = index_.all();
  for (IndexSet s = 0; s <= all; ++s)
    if (contains(s) == contains(all & ~s)) return false;
  return true;
}

PrincipalUltrafilter build_ultrafilter(const FinIndex& index) { return PrincipalUltrafilter(index); }

// ---- structures ----------------------------------------------------------

Structure::Structure(int carrier_size) {
  if (carrier_size < 1) throw InvalidArgument("carrier must be nonempty");
  for (int i = 0; i < carrier_size; ++i) names.push_back(std::to_string(i));
  membership.assign(static_cast<std::size_t>(carrier_size * carrier_size), 0);
}

Structure Structure::from_relation_code(int carrier_size, std::uint64_t code) {
  Structure s(carrier_size);
  for (int i = 0; i < carrier_size * carrier_size; ++i) s.membership[static_cast<std::size_t>(i)] = (code >> i) & 1;
  return s;
}

int Structure::element(const std::string& name) const {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw InvalidArgument("unknown carrier element '" + name + "'");
  return static_cast<int>(it - names.begin());
}

// ---- ultrapower ----------------------------------------------------------

FinUltrapower::FinUltrapower(Structure base, PrincipalUltrafilter ultrafilter)
    : base_(std::move(base)), uf_(std::move(ultrafilter)) {
  const int c = base_.size();
  const int n = uf_.index().size;
  std::uint64_t count = 1;
  for (int i = 0; i < n; ++i) {
    count *= static_cast<std::uint64_t>(c);
    if (count > (1u << 20)) throw InvalidArgument("ultrapower too large to enumerate");
  }
  function_count_ = static_cast<FunctionCode>(count);

  // f ~ g iff they agree on a large set.
  class_of_.assign(function_count_, -1);
  for (FunctionCode f = 0; f < function_count_; ++f) {
    if (class_of_[f] >= 0) continue;
    int id = static_cast<int>(classes_.size());
    classes_.emplace_back();
    for (FunctionCode g = f; g < function_count_; ++g) {
      if (class_of_[g] < 0 && uf_.contains(agreement(f, g))) {
        class_of_[g] = id;
        classes_.back().push_back(g);
      }
    }
  }

  auto large_set = [&](auto&& holds_at) {
    IndexSet s = 0;
    for (int i = 0; i < n; ++i)
      if (holds_at(i)) s |= IndexSet{1} << i;
    return uf_.contains(s);
  };

  const int k = class_count();
  memrel_.assign(static_cast<std::size_t>(k * k), 0);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      bool first = true;
      bool value = false;
      for (FunctionCode f : classes_[static_cast<std::size_t>(a)]) {
        for (FunctionCode g : classes_[static_cast<std::size_t>(b)]) {
          bool v = large_set([&](int i) { return base_.member(this->value(f, i), this->value(g, i)); });
          if (first) value = v;
          else if (v != value) well_defined_ = false;
          first = false;
        }
      }
      memrel_[static_cast<std::size_t>(a * k + b)] = value;
    }
  }
  for (const auto& [name, rel] : base_.unary) {
    std::vector<char> lifted(static_cast<std::size_t>(k), 0);
    for (int a = 0; a < k; ++a) {
      bool first = true;
      for (FunctionCode f : classes_[static_cast<std::size_t>(a)]) {
        bool v = large_set([&](int i) { return rel[static_cast<std::size_t>(this->value(f, i))] != 0; });
        if (first) lifted[static_cast<std::size_t>(a)] = v;
        else if (v != (lifted[static_cast<std::size_t>(a)] != 0)) well_defined_ = false;
        first = false;
      }
    }
    unary_[name] = std::move(lifted);
  }
}

int FinUltrapower::value(FunctionCode f, int i) const {
  const auto c = static_cast<FunctionCode>(base_.size());
  for (int j = 0; j < i; ++j) f /= c;
  return static_cast<int>(f % c);
}

FunctionCode FinUltrapower::encode(const std::vector<int>& values) const {
  if (static_cast<int>(values.size()) != index().size) throw InvalidArgument("function has the wrong arity");
  FunctionCode code = 0;
  for (std::size_t i = values.size(); i-- > 0;) {
    if (values[i] < 0 || values[i] >= base_.size()) throw InvalidArgument("function value outside the carrier");
    code = code * static_cast<FunctionCode>(base_.size()) + static_cast<FunctionCode>(values[i]);
  }
  return code;
}

FunctionCode FinUltrapower::constant(int x) const { return encode(std::vector<int>(static_cast<std::size_t>(index().size), x)); }

bool FinUltrapower::class_unary(const std::string& name, int a) const {
  auto it = unary_.find(name);
  if (it == unary_.end()) throw MalformedFormula("unknown relation '" + name + "'");
  return it->second[static_cast<std::size_t>(a)] != 0;
}

IndexSet FinUltrapower::agreement(FunctionCode f, FunctionCode g) const {
  IndexSet s = 0;
  for (int i = 0; i < index().size; ++i)
    if (value(f, i) == value(g, i)) s |= IndexSet{1} << i;
  return s;
}

FinUltrapower ultrapower_quotient(const Structure& base, const FinIndex& index) {
  return FinUltrapower(base, build_ultrafilter(index));
}

// ---- formulas ------------------------------------------------------------

Formula::Formula(Op op, std::string a, std::string b, std::vector<Formula> children)
    : op_(op), a_(std::move(a)), b_(std::move(b)), children_(std::move(children)) {}

Formula Formula::member(std::string a, std::string b) { return Formula(Op::member, std::move(a), std::move(b), {}); }
Formula Formula::equal(std::string a, std::string b) { return Formula(Op::equal, std::move(a), std::move(b), {}); }
Formula Formula::relation(std::string name, std::string a) {
  return Formula(Op::relation, std::move(a), std::move(name), {});
}
Formula Formula::negation(Formula f) { return Formula(Op::negation, "", "", {std::move(f)}); }
Formula Formula::conjunction(Formula f, Formula g) { return Formula(Op::conjunction, "", "", {std::move(f), std::move(g)}); }
Formula Formula::disjunction(Formula f, Formula g) { return Formula(Op::disjunction, "", "", {std::move(f), std::move(g)}); }
Formula Formula::implication(Formula f, Formula g) { return Formula(Op::implication, "", "", {std::move(f), std::move(g)}); }
Formula Formula::exists(std::string var, Formula f) { return Formula(Op::exists, std::move(var), "", {std::move(f)}); }
Formula Formula::forall(std::string var, Formula f) { return Formula(Op::forall, std::move(var), "", {std::move(f)}); }
Formula Formula::exists_in(std::string var, std::string bound, Formula f) {
  return Formula(Op::exists_in, std::move(var), std::move(bound), {std::move(f)});
}
Formula Formula::forall_in(std::string var, std::string bound, Formula f) {
  return Formula(Op::forall_in, std::move(var), std::move(bound), {std::move(f)});
}

int Formula::depth() const {
  int d = -1;
  for (const auto& c : children_) d = std::max(d, c.depth());
  return d + 1;
}

std::set<std::string> Formula::free_variables() const {
  switch (op_) {
    case Op::member:
    case Op::equal:
      return {a_, b_};
    case Op::relation:
      return {a_};
    case Op::exists:
    case Op::forall: {
      auto s = children_[0].free_variables();
      s.erase(a_);
      return s;
    }
    case Op::exists_in:
    case Op::forall_in: {
      auto s = children_[0].free_variables();
      s.erase(a_);
      s.insert(b_);
      return s;
    }
    default: {
      std::set<std::string> s;
      for (const auto& c : children_) {
        auto cs = c.free_variables();
        s.insert(cs.begin(), cs.end());
      }
      return s;
    }
  }
}

std::string Formula::to_string() const {
  switch (op_) {
    case Op::member:
      return a_ + " E " + b_;
    case Op::equal:
      return a_ + " = " + b_;
    case Op::relation:
      return b_ + "(" + a_ + ")";
    case Op::negation:
      return "~(" + children_[0].to_string() + ")";
    case Op::conjunction:
      return "(" + children_[0].to_string() + " & " + children_[1].to_string() + ")";
    case Op::disjunction:
      return "(" + children_[0].to_string() + " | " + children_[1].to_string() + ")";
    case Op::implication:
      return "(" + children_[0].to_string() + " -> " + children_[1].to_string() + ")";
    case Op::exists:
      return "exists " + a_ + ". " + children_[0].to_string();
    case Op::forall:
      return "forall " + a_ + ". " + children_[0].to_string();
    case Op::exists_in:
      return "exists " + a_ + " E " + b_ + ". " + children_[0].to_string();
    case Op::forall_in:
      return "forall " + a_ + " E " + b_ + ". " + children_[0].to_string();
  }
  return "?";
}

namespace {

// Generic evaluator over a finite domain with callbacks for the atoms.
template <typename Member, typename Unary>
bool evaluate(const Formula& f, std::map<std::string, int>& env, int domain, const Member& member, const Unary& unary) {
  using Op = Formula::Op;
  auto lookup = [&](const std::string& v) {
    auto it = env.find(v);
    if (it == env.end()) throw MalformedFormula("unbound variable '" + v + "'");
    return it->second;
  };
  auto quantify = [&](bool exists, bool bounded) {
    const std::string& var = f.a();
    std::optional<int> saved;
    if (auto it = env.find(var); it != env.end()) saved = it->second;
    int bound = bounded ? lookup(f.b()) : 0;
    bool result = !exists;
    for (int x = 0; x < domain; ++x) {
      if (bounded && !member(x, bound)) continue;
      env[var] = x;
      bool v = evaluate(f.children()[0], env, domain, member, unary);
      if (exists && v) {
        result = true;
        break;
      }
      if (!exists && !v) {
        result = false;
        break;
      }
    }
    if (saved) env[var] = *saved;
    else env.erase(var);
    return result;
  };
  switch (f.op()) {
    case Op::member:
      return member(lookup(f.a()), lookup(f.b()));
    case Op::equal:
      return lookup(f.a()) == lookup(f.b());
    case Op::relation:
      return unary(f.b(), lookup(f.a()));
    case Op::negation:
      return !evaluate(f.children()[0], env, domain, member, unary);
    case Op::conjunction:
      return evaluate(f.children()[0], env, domain, member, unary) &&
             evaluate(f.children()[1], env, domain, member, unary);
    case Op::disjunction:
      return evaluate(f.children()[0], env, domain, member, unary) ||
             evaluate(f.children()[1], env, domain, member, unary);
    case Op::implication:
      return !evaluate(f.children()[0], env, domain, member, unary) ||
             evaluate(f.children()[1], env, domain, member, unary);
    case Op::exists:
      return quantify(true, false);
    case Op::forall:
      return quantify(false, false);
    case Op::exists_in:
      return quantify(true, true);
    case Op::forall_in:
      return quantify(false, true);
  }
  throw MalformedFormula("unknown connective");
}

void validate(const FinUltrapower& up, const Formula& phi, const std::map<std::string, FunctionCode>& params,
              int max_depth) {
  if (phi.depth() > max_depth)
    throw MalformedFormula("formula depth " + std::to_string(phi.depth()) + " exceeds bound " +
                           std::to_string(max_depth));
  for (const auto& v : phi.free_variables())
    if (!params.count(v)) throw MalformedFormula("free variable '" + v + "' has no parameter");
  for (const auto& [name, f] : params)
    if (f >= up.function_count()) throw MalformedFormula("parameter '" + name + "' is not a function code");
  std::function<void(const Formula&)> check_relations = [&](const Formula& f) {
    if (f.op() == Formula::Op::relation && !up.base().unary.count(f.b()))
      throw MalformedFormula("unknown relation '" + f.b() + "'");
    for (const auto& c : f.children()) check_relations(c);
  };
  check_relations(phi);
}

}  // namespace

LosReport los_check(const FinUltrapower& up, const Formula& phi, const std::map<std::string, FunctionCode>& params,
                    int max_depth) {
  validate(up, phi, params, max_depth);
  LosReport report;

  std::map<std::string, int> env;
  for (const auto& [name, f] : params) env[name] = up.class_of(f);
  report.quotient_holds = evaluate(
      phi, env, up.class_count(), [&](int a, int b) { return up.class_member(a, b); },
      [&](const std::string& name, int a) { return up.class_unary(name, a); });

  const Structure& base = up.base();
  for (int i = 0; i < up.index().size; ++i) {
    std::map<std::string, int> at;
    for (const auto& [name, f] : params) at[name] = up.value(f, i);
    bool v = evaluate(
        phi, at, base.size(), [&](int a, int b) { return base.member(a, b); },
        [&](const std::string& name, int a) { return base.unary.at(name)[static_cast<std::size_t>(a)] != 0; });
    if (v) report.pointwise |= IndexSet{1} << i;
  }
  report.pointwise_large = up.ultrafilter().contains(report.pointwise);
  return report;
}

// ---- codings -------------------------------------------------------------

PsiCode psi_finite(const FinUltrapower& up, const ClassSet& x) {
  if (static_cast<int>(x.size()) != up.class_count()) throw InvalidArgument("class set has the wrong size");
  PsiCode code;
  code.functions.assign(up.function_count(), 0);
  for (FunctionCode f = 0; f < up.function_count(); ++f) code.functions[f] = x[static_cast<std::size_t>(up.class_of(f))];
  for (int c = 0; c < up.class_count(); ++c)
    if (x[static_cast<std::size_t>(c)]) code.classes.push_back(up.class_members(c));
  return code;
}

namespace {

template <typename Op>
ClassSet combine(const ClassSet& a, const ClassSet& b, Op op) {
  ClassSet out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = op(a[i] != 0, b[i] != 0);
  return out;
}

template <typename Op>
FunctionSet combine_functions(const FunctionSet& a, const FunctionSet& b, Op op) {
  FunctionSet out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = op(a[i] != 0, b[i] != 0);
  return out;
}

template <typename Set>
bool subset(const Set& a, const Set& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

}  // namespace

SetOpReport setop_check(const FinUltrapower& up, const ClassSet& x, const ClassSet& y) {
  auto unite = [](bool a, bool b) { return a || b; };
  auto meet = [](bool a, bool b) { return a && b; };
  auto minus = [](bool a, bool b) { return a && !b; };
  const FunctionSet px = psi_finite(up, x).functions;
  const FunctionSet py = psi_finite(up, y).functions;

  SetOpReport r;
  const FunctionSet empty_code = psi_finite(up, ClassSet(x.size(), 0)).functions;
  r.empty_preserved = std::none_of(empty_code.begin(), empty_code.end(), [](char c) { return c != 0; });
  r.union_preserved = psi_finite(up, combine(x, y, unite)).functions == combine_functions(px, py, unite);
  r.intersection_preserved = psi_finite(up, combine(x, y, meet)).functions == combine_functions(px, py, meet);
  r.difference_preserved = psi_finite(up, combine(x, y, minus)).functions == combine_functions(px, py, minus);
  r.monotone = subset(x, y) == subset(px, py) && subset(y, x) == subset(py, px);
  return r;
}

// ---- formula signatures ---------------------------------------------------

namespace {

// Truth tables over pairs (x, y) in a domain of size d: bit x*d + y.
class TableAlgebra {
 public:
  TableAlgebra(int d, std::function<bool(int, int)> member) : d_(d), member_(std::move(member)) {
    if (d * d > 64) throw InvalidArgument("domain too large for table signatures");
    full_ = d * d == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << (d * d)) - 1;
  }

  std::uint64_t tabulate(const std::function<bool(int, int)>& pred) const {
    std::uint64_t t = 0;
    for (int x = 0; x < d_; ++x)
      for (int y = 0; y < d_; ++y)
        if (pred(x, y)) t |= bit(x, y);
    return t;
  }

  std::vector<std::uint64_t> atoms(const std::vector<std::function<bool(int)>>& unary) const {
    std::vector<std::uint64_t> out = {
        tabulate([&](int x, int) { return member_(x, x); }), tabulate([&](int x, int y) { return member_(x, y); }),
        tabulate([&](int x, int y) { return member_(y, x); }), tabulate([&](int, int y) { return member_(y, y); }),
        tabulate([](int, int) { return true; }),                // x = x
        tabulate([](int x, int y) { return x == y; }),          // x = y
        tabulate([](int x, int y) { return y == x; }),          // y = x
        tabulate([](int, int) { return true; }),                // y = y
    };
    for (const auto& r : unary) {
      out.push_back(tabulate([&](int x, int) { return r(x); }));
      out.push_back(tabulate([&](int, int y) { return r(y); }));
    }
    return out;
  }

  std::uint64_t negate(std::uint64_t t) const { return ~t & full_; }

  // which: 0 quantifies x, 1 quantifies y; bounded restricts the quantified
  // variable to members of the other one.
  std::uint64_t quantify(std::uint64_t t, bool exists, int which, bool bounded) const {
    return tabulate([&](int x, int y) {
      bool acc = !exists;
      for (int v = 0; v < d_; ++v) {
        int qx = which == 0 ? v : x;
        int qy = which == 0 ? y : v;
        if (bounded && !(which == 0 ? member_(v, y) : member_(v, x))) continue;
        bool val = (t & bit(qx, qy)) != 0;
        if (exists ? val : !val) return exists;
      }
      return acc;
    });
  }

  std::uint64_t bit(int x, int y) const { return std::uint64_t{1} << (x * d_ + y); }

 private:
  int d_;
  std::function<bool(int, int)> member_;
  std::uint64_t full_ = 0;
};

std::vector<std::string> unary_names(const FinUltrapower& up) {
  std::vector<std::string> out;
  for (const auto& [name, rel] : up.base().unary) out.push_back(name);
  return out;
}

}  // namespace

std::set<Signature> signature_closure(const FinUltrapower& up, int depth) {
  const Structure& base = up.base();
  TableAlgebra tb(base.size(), [&](int a, int b) { return base.member(a, b); });
  TableAlgebra tq(up.class_count(), [&](int a, int b) { return up.class_member(a, b); });

  std::vector<std::function<bool(int)>> ub, uq;
  for (const auto& name : unary_names(up)) {
    ub.emplace_back([&base, name](int a) { return base.unary.at(name)[static_cast<std::size_t>(a)] != 0; });
    uq.emplace_back([&up, name](int a) { return up.class_unary(name, a); });
  }
  auto ab = tb.atoms(ub);
  auto aq = tq.atoms(uq);
  std::set<Signature> level;
  for (std::size_t i = 0; i < ab.size(); ++i) level.insert({ab[i], aq[i]});
  const std::set<Signature> atoms = level;

  for (int d = 1; d <= depth; ++d) {
    std::set<Signature> next = atoms;
    std::vector<Signature> prev(level.begin(), level.end());
    for (const auto& s : prev) {
      next.insert({tb.negate(s.base), tq.negate(s.quotient)});
      for (bool exists : {true, false})
        for (int which : {0, 1})
          for (bool bounded : {false, true})
            next.insert({tb.quantify(s.base, exists, which, bounded), tq.quantify(s.quotient, exists, which, bounded)});
    }
    for (const auto& s : prev) {
      for (const auto& t : prev) {
        next.insert({s.base & t.base, s.quotient & t.quotient});
        next.insert({s.base | t.base, s.quotient | t.quotient});
      }
    }
    level = std::move(next);
  }
  return level;
}

std::vector<Formula> enumerate_formulas(int depth) {
  std::vector<Formula> atoms = {Formula::member("x", "x"), Formula::member("x", "y"), Formula::member("y", "x"),
                                Formula::member("y", "y"), Formula::equal("x", "x"),  Formula::equal("x", "y"),
                                Formula::equal("y", "x"),  Formula::equal("y", "y")};
  std::vector<Formula> level = atoms;
  for (int d = 1; d <= depth; ++d) {
    std::vector<Formula> next = atoms;
    for (const auto& f : level) {
      next.push_back(Formula::negation(f));
      next.push_back(Formula::exists("x", f));
      next.push_back(Formula::exists("y", f));
      next.push_back(Formula::forall("x", f));
      next.push_back(Formula::forall("y", f));
      next.push_back(Formula::exists_in("x", "y", f));
      next.push_back(Formula::exists_in("y", "x", f));
      next.push_back(Formula::forall_in("x", "y", f));
      next.push_back(Formula::forall_in("y", "x", f));
    }
    for (const auto& f : level) {
      for (const auto& g : level) {
        next.push_back(Formula::conjunction(f, g));
        next.push_back(Formula::disjunction(f, g));
      }
    }
    level = std::move(next);
  }
  return level;
}

std::set<Signature> reference_signatures(const FinUltrapower& up, int depth) {
  const Structure& base = up.base();
  std::set<Signature> out;
  for (const auto& f : enumerate_formulas(depth)) {
    Signature s;
    for (int x = 0; x < base.size(); ++x) {
      for (int y = 0; y < base.size(); ++y) {
        std::map<std::string, int> env{{"x", x}, {"y", y}};
        if (evaluate(
                f, env, base.size(), [&](int a, int b) { return base.member(a, b); },
                [&](const std::string&, int) { return false; }))
          s.base |= std::uint64_t{1} << (x * base.size() + y);
      }
    }
    for (int x = 0; x < up.class_count(); ++x) {
      for (int y = 0; y < up.class_count(); ++y) {
        std::map<std::string, int> env{{"x", x}, {"y", y}};
        if (evaluate(
                f, env, up.class_count(), [&](int a, int b) { return up.class_member(a, b); },
                [&](const std::string&, int) { return false; }))
          s.quotient |= std::uint64_t{1} << (x * up.class_count() + y);
      }
    }
    out.insert(s);
  }
  return out;
}

// ---- sweeps ---------------------------------------------------------------

std::vector<Instance> enumerate_instances(const SweepBounds& bounds) {
  if (bounds.max_index < 1 || bounds.max_index > 4) throw InvalidArgument("sweep index size must be in [1, 4]");
  if (bounds.max_carrier < 1 || bounds.max_carrier > 3) throw InvalidArgument("sweep carrier size must be in [1, 3]");
  if (bounds.depth < 0 || bounds.depth > 3) throw InvalidArgument("sweep depth must be in [0, 3]");
  std::vector<Instance> out;
  for (int n = 1; n <= bounds.max_index; ++n)
    for (int w = 0; w < n; ++w)
      for (int c = 1; c <= bounds.max_carrier; ++c)
        for (std::uint64_t r = 0; r < (std::uint64_t{1} << (c * c)); ++r) out.push_back({n, w, c, r});
  return out;
}

namespace {

void merge(SweepReport& into, const SweepReport& part) {
  into.instances += part.instances;
  into.signatures += part.signatures;
  into.los_checks += part.los_checks;
  into.quotient_checks += part.quotient_checks;
  into.mismatches += part.mismatches;
  if (!into.first_mismatch && part.first_mismatch) into.first_mismatch = part.first_mismatch;
}

std::string describe(const FinUltrapower& up) {
  std::ostringstream os;
  os << "|I|=" << up.index().size << " w=" << up.index().w << " carrier=" << up.base().size() << " E={";
  bool first = true;
  for (int a = 0; a < up.base().size(); ++a)
    for (int b = 0; b < up.base().size(); ++b)
      if (up.base().member(a, b)) {
        os << (first ? "" : ",") << "(" << up.base().names[static_cast<std::size_t>(a)] << ","
           << up.base().names[static_cast<std::size_t>(b)] << ")";
        first = false;
      }
  os << "}";
  return os.str();
}

}  // namespace

SweepReport check_model(const FinUltrapower& up, int depth) {
  SweepReport r;
  r.instances = 1;
  const int n = up.index().size;
  const int w = up.index().w;
  const int c = up.base().size();
  const FunctionCode nf = up.function_count();

  auto fail = [&](const std::string& what) {
    ++r.mismatches;
    if (!r.first_mismatch) r.first_mismatch = describe(up) + ": " + what;
  };

  // Classes and the induced relation agree with evaluation at w.
  if (!up.well_defined()) fail("induced relation depends on representatives");
  for (FunctionCode f = 0; f < nf; ++f) {
    for (FunctionCode g = 0; g < nf; ++g) {
      ++r.quotient_checks;
      bool same = up.class_of(f) == up.class_of(g);
      bool mem = up.class_member(up.class_of(f), up.class_of(g));
      if (same != (up.value(f, w) == up.value(g, w)) || mem != up.base().member(up.value(f, w), up.value(g, w)))
        fail("quotient disagrees with evaluation at w");
    }
  }

  // Per parameter pair: the class pair, and for each index the base table bit.
  std::vector<std::uint64_t> qbit(static_cast<std::size_t>(nf) * nf);
  std::vector<std::uint64_t> pbits(static_cast<std::size_t>(nf) * nf * static_cast<std::size_t>(n));
  const int k = up.class_count();
  for (FunctionCode f = 0; f < nf; ++f) {
    for (FunctionCode g = 0; g < nf; ++g) {
      std::size_t pair = static_cast<std::size_t>(f) * nf + g;
      qbit[pair] = std::uint64_t{1} << (up.class_of(f) * k + up.class_of(g));
      for (int i = 0; i < n; ++i)
        pbits[pair * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)] =
            std::uint64_t{1} << (up.value(f, i) * c + up.value(g, i));
    }
  }

  const auto sigs = signature_closure(up, depth);
  r.signatures = sigs.size();
  for (const auto& s : sigs) {
    for (std::size_t pair = 0; pair < qbit.size(); ++pair) {
      ++r.los_checks;
      IndexSet pointwise = 0;
      for (int i = 0; i < n; ++i)
        if (s.base & pbits[pair * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)]) pointwise |= IndexSet{1} << i;
      bool quotient = (s.quotient & qbit[pair]) != 0;
      if (quotient != up.ultrafilter().contains(pointwise)) {
        std::ostringstream os;
        os << "Los mismatch for params (" << pair / nf << ", " << pair % nf << "), pointwise set " << pointwise;
        fail(os.str());
      }
    }
  }
  return r;
}

SweepReport check_instance(const Instance& inst, int depth) {
  FinUltrapower up = ultrapower_quotient(Structure::from_relation_code(inst.carrier, inst.relation),
                                         FinIndex(inst.index_size, inst.w));
  return check_model(up, depth);
}

SweepReport los_sweep(const std::vector<Instance>& instances, int depth, Execution exec) {
  std::vector<SweepReport> parts(instances.size());
  const auto count = static_cast<std::ptrdiff_t>(instances.size());
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < count; ++i) parts[static_cast<std::size_t>(i)] = check_instance(instances[static_cast<std::size_t>(i)], depth);
  } else {
    for (std::ptrdiff_t i = 0; i < count; ++i) parts[static_cast<std::size_t>(i)] = check_instance(instances[static_cast<std::size_t>(i)], depth);
  }
  SweepReport total;
  for (const auto& p : parts) merge(total, p);
  return total;
}

SweepReport los_sweep(const SweepBounds& bounds, Execution exec) {
  return los_sweep(enumerate_instances(bounds), bounds.depth, exec);
}

namespace {

PsiReport psi_instance(int n, int w, int c) {
  PsiReport r;
  r.instances = 1;
  FinUltrapower up = ultrapower_quotient(Structure(c), FinIndex(n, w));
  const int k = up.class_count();
  for (std::uint32_t xm = 0; xm < (1u << k); ++xm) {
    for (std::uint32_t ym = 0; ym < (1u << k); ++ym) {
      ClassSet x(static_cast<std::size_t>(k)), y(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) {
        x[static_cast<std::size_t>(i)] = (xm >> i) & 1;
        y[static_cast<std::size_t>(i)] = (ym >> i) & 1;
      }
      ++r.pairs;
      if (!setop_check(up, x, y).ok()) ++r.failures;
    }
  }
  return r;
}

}  // namespace

PsiReport psi_sweep(const SweepBounds& bounds, Execution exec) {
  std::vector<std::array<int, 3>> configs;
  for (int n = 1; n <= bounds.max_index; ++n)
    for (int w = 0; w < n; ++w)
      for (int c = 1; c <= bounds.max_carrier; ++c) configs.push_back({n, w, c});
  std::vector<PsiReport> parts(configs.size());
  const auto count = static_cast<std::ptrdiff_t>(configs.size());
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      const auto& cfg = configs[static_cast<std::size_t>(i)];
      parts[static_cast<std::size_t>(i)] = psi_instance(cfg[0], cfg[1], cfg[2]);
    }
  } else {
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      const auto& cfg = configs[static_cast<std::size_t>(i)];
      parts[static_cast<std::size_t>(i)] = psi_instance(cfg[0], cfg[1], cfg[2]);
    }
  }
  PsiReport total;
  for (const auto& p : parts) {
    total.instances += p.instances;
    total.pairs += p.pairs;
    total.failures += p.failures;
  }
  return total;
}

// ---- model files ------------------------------------------------------------

ModelFile parse_model(std::istream& in) {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> members;
  std::map<std::string, std::vector<std::string>> relations;
  std::optional<int> size, w;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    auto bad = [&](const std::string& msg) {
      throw InvalidArgument("model line " + std::to_string(lineno) + ": " + msg);
    };
    if (key == "carrier") {
      std::string name;
      while (ls >> name) names.push_back(name);
    } else if (key == "member") {
      std::string a, b;
      if (!(ls >> a >> b)) bad("expected 'member A B'");
      members.emplace_back(a, b);
    } else if (key == "relation") {
      std::string rel, a;
      if (!(ls >> rel)) bad("expected 'relation NAME ELEMENTS...'");
      auto& list = relations[rel];
      while (ls >> a) list.push_back(a);
    } else if (key == "index") {
      int v;
      if (!(ls >> v)) bad("expected 'index N'");
      size = v;
    } else if (key == "w") {
      int v;
      if (!(ls >> v)) bad("expected 'w I'");
      w = v;
    } else {
      bad("unknown key '" + key + "'");
    }
  }
  if (names.empty()) throw InvalidArgument("model has no carrier");
  if (!size || !w) throw InvalidArgument("model must give 'index' and 'w'");
  ModelFile m;
  m.base = Structure(static_cast<int>(names.size()));
  m.base.names = names;
  for (const auto& [a, b] : members) m.base.set_member(m.base.element(a), m.base.element(b));
  for (const auto& [rel, elems] : relations) {
    std::vector<char> v(names.size(), 0);
    for (const auto& e : elems) v[static_cast<std::size_t>(m.base.element(e))] = 1;
    m.base.unary[rel] = std::move(v);
  }
  m.index = FinIndex(*size, *w);
  return m;
}

}  // namespace nsfrag::strucmodel
