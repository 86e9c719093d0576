#include "regen/tracecalc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace regen {

const std::vector<std::string>& trace_vars() {
  static const std::vector<std::string> v{"x1", "x2", "x3"};
  return v;
}

namespace {

// Letters are +-1 (A) and +-2 (B).
std::vector<int> reduce_cyclically(const std::vector<int>& w) {
  std::vector<int> s;
  for (int l : w) {
    if (!s.empty() && s.back() == -l)
      s.pop_back();
    else
      s.push_back(l);
  }
  std::size_t b = 0, e = s.size();
  while (e - b >= 2 && s[b] == -s[e - 1]) {
    ++b;
    --e;
  }
  return {s.begin() + static_cast<long>(b), s.begin() + static_cast<long>(e)};
}

std::vector<int> canonical_rotation(const std::vector<int>& w) {
  std::vector<int> inv(w.rbegin(), w.rend());
  for (int& l : inv) l = -l;
  // tr(w) = tr(w^-1); only the form with fewer inverse letters is a candidate,
  // which keeps the recursion below well founded.
  auto negs = [](const std::vector<int>& v) { return std::count_if(v.begin(), v.end(), [](int l) { return l < 0; }); };
  std::vector<int> best = negs(inv) < negs(w) ? inv : w;
  for (const std::vector<int>* src : {&w, static_cast<const std::vector<int>*>(&inv)}) {
    if (negs(*src) != negs(best)) continue;
    std::vector<int> r = *src;
    for (std::size_t k = 0; k < r.size(); ++k) {
      std::rotate(r.begin(), r.begin() + 1, r.end());
      if (r < best) best = r;
    }
  }
  return best;
}

std::vector<int> rotate_to_end(const std::vector<int>& w, std::size_t pos) {
  std::vector<int> r = w;
  std::rotate(r.begin(), r.begin() + static_cast<long>(pos + 1), r.end());
  return r;
}

MultiPoly chebyshev(const MultiPoly& x, int n) {
  MultiPoly a = MultiPoly::constant(trace_vars(), 2), b = x;
  if (n == 0) return a;
  for (int k = 1; k < n; ++k) {
    MultiPoly c = x * b - a;
    a = std::move(b);
    b = std::move(c);
  }
  return b;
}

}  // namespace

MultiPoly TraceEngine::trace(const Word& w) {
  std::vector<int> letters;
  for (const auto& l : w.letters()) {
    int code;
    if (l.generator == first_)
      code = 1;
    else if (l.generator == second_)
      code = 2;
    else
      throw std::invalid_argument("word uses a generator other than the designated pair");
    for (int k = 0; k < std::abs(l.exponent); ++k) letters.push_back(l.exponent > 0 ? code : -code);
  }
  return trace_letters(std::move(letters));
}

MultiPoly TraceEngine::trace_letters(std::vector<int> w) {
  const auto& vars = trace_vars();
  w = reduce_cyclically(w);
  if (w.empty()) return MultiPoly::constant(vars, 2);
  std::vector<int> key = canonical_rotation(w);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  w = key;
  const std::size_t n = w.size();
  auto xg = [&](int letter) { return MultiPoly::variable(vars, std::abs(letter) - 1); };

  MultiPoly result(vars);
  auto neg = std::find_if(w.begin(), w.end(), [](int l) { return l < 0; });
  if (neg != w.end()) {
    // tr(U g^-1) = tr(g) tr(U) - tr(U g)
    auto r = rotate_to_end(w, static_cast<std::size_t>(neg - w.begin()));
    int g = -r.back();
    std::vector<int> u(r.begin(), r.end() - 1);
    std::vector<int> ug = u;
    ug.push_back(g);
    result = xg(g) * trace_letters(u) - trace_letters(ug);
  } else if (std::all_of(w.begin(), w.end(), [&](int l) { return l == w[0]; })) {
    result = chebyshev(xg(w[0]), static_cast<int>(n));
  } else {
    std::size_t pos = n;
    for (std::size_t i = 0; i < n; ++i)
      if (w[i] == w[(i + 1) % n]) {
        pos = (i + 1) % n;
        break;
      }
    if (pos < n) {
      // tr(U g g) = tr(g) tr(U g) - tr(U)
      auto r = rotate_to_end(w, pos);
      int g = r.back();
      std::vector<int> ug(r.begin(), r.end() - 1);
      std::vector<int> u(r.begin(), r.end() - 2);
      result = xg(g) * trace_letters(ug) - trace_letters(u);
    } else {
      // Alternating word (AB)^k.
      result = chebyshev(MultiPoly::variable(vars, 2), static_cast<int>(n / 2));
    }
  }
  memo_.emplace(std::move(key), result);
  return result;
}

MultiPoly trace_polynomial(const Word& w, int first, int second) {
  return TraceEngine(first, second).trace(w);
}

Word rewrite_word(const Word& w, const std::vector<Word>& images) {
  Word out;
  for (const auto& l : w.letters()) {
    const Word& img = images.at(l.generator);
    Word piece = l.exponent > 0 ? img : word_invert(img);
    for (int k = 0; k < std::abs(l.exponent); ++k) out = out * piece;
  }
  return free_reduce(out);
}

TwoGeneratorReduction two_generator_reduction(const Presentation& p) {
  const int n = p.generator_count();
  std::vector<const Substitution*> sub(n, nullptr);
  for (const auto& s : p.substitutions) sub.at(s.generator) = &s;
  std::vector<int> kept;
  for (int g = 0; g < n; ++g)
    if (!sub[g]) kept.push_back(g);
  if (kept.size() != 2)
    throw ReductionError("substitution leaves " + std::to_string(kept.size()) +
                         " generators; exactly 2 are required");

  TwoGeneratorReduction out;
  out.kept = kept;
  for (int g : kept) out.reduced.generators.push_back(p.generators[g]);
  // Provisional images in original indices, expanded until only kept ones remain.
  std::vector<Word> images(n);
  for (int g = 0; g < n; ++g) images[g] = sub[g] ? sub[g]->replacement : Word::generator(g);
  for (int round = 0; round <= n; ++round) {
    bool clean = true;
    for (int g = 0; g < n; ++g) {
      for (const auto& l : images[g].letters())
        if (sub[l.generator]) clean = false;
    }
    if (clean) break;
    if (round == n) throw ReductionError("substitutions are cyclic");
    std::vector<Word> next(n);
    for (int g = 0; g < n; ++g) next[g] = rewrite_word(images[g], images);
    images = std::move(next);
  }
  std::vector<Word> to_new(n);
  to_new[kept[0]] = Word::generator(0);
  to_new[kept[1]] = Word::generator(1);
  out.images.resize(n);
  for (int g = 0; g < n; ++g) out.images[g] = rewrite_word(images[g], to_new);

  for (const auto& r : p.relators) {
    Word w = rewrite_word(r, out.images);
    if (!cyclic_reduce(w).empty()) out.reduced.relators.push_back(w);
  }
  out.reduced.meridian = rewrite_word(p.meridian, out.images);
  out.reduced.longitude = rewrite_word(p.longitude, out.images);
  return out;
}

std::vector<MultiPoly> character_ideal(const Presentation& p) {
  if (p.generator_count() != 2)
    throw std::invalid_argument("character ideal needs a two-generator presentation");
  const auto& vars = trace_vars();
  TraceEngine engine;
  std::vector<MultiPoly> out;
  auto push = [&](MultiPoly f) {
    if (f.is_zero()) return;
    f = f.primitive();
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(std::move(f));
  };
  for (const auto& r : p.relators) {
    push(engine.trace(r) - MultiPoly::constant(vars, 2));
    push(engine.trace(r * Word::generator(0)) - MultiPoly::variable(vars, 0));
    push(engine.trace(r * Word::generator(1)) - MultiPoly::variable(vars, 1));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

const std::vector<std::string>& elim_vars() {
  static const std::vector<std::string> v{"x1", "x2", "x3", "x", "y"};
  return v;
}

std::vector<std::complex<double>> point_of(const CharacterSample& s) {
  return {s.x1, s.x2, s.x3, s.x, s.y};
}

bool vanishes(const MultiPoly& f, std::span<const CharacterSample> samples, double tol) {
  for (const auto& s : samples) {
    auto pt = point_of(s);
    double scale = f.magnitude(pt);
    if (std::abs(f.evaluate(pt)) > tol * scale) return false;
  }
  return true;
}

std::string describe(const MultiPoly& f) {
  std::ostringstream os;
  os << f.size() << " terms, degrees (";
  bool first = true;
  for (int v = 0; v < f.nvars(); ++v) {
    if (!f.contains(v)) continue;
    os << (first ? "" : ",") << f.vars()[v] << ":" << f.degree(v);
    first = false;
  }
  os << ")";
  return os.str();
}

struct Cleaner {
  std::span<const CharacterSample> samples;
  double tol;

  // Squarefree product of the factors of f that vanish on the samples.
  std::optional<MultiPoly> operator()(const MultiPoly& f) const {
    if (f.is_zero()) return std::nullopt;
    MultiPoly p = f.primitive();
    if (p.is_constant()) return std::nullopt;
    MultiPoly keep = MultiPoly::constant(p.vars(), 1);
    bool any = false;
    for (auto& [factor, mult] : squarefree_decomposition(p)) {
      (void)mult;
      if (samples.empty() || vanishes(factor, samples, tol)) {
        keep = keep * factor;
        any = true;
      }
    }
    if (!any) return std::nullopt;
    return keep.primitive();
  }
};

void add_unique(std::vector<MultiPoly>& v, MultiPoly f) {
  if (std::find(v.begin(), v.end(), f) == v.end()) v.push_back(std::move(f));
}

std::optional<MultiPoly> common_gcd(const std::vector<MultiPoly>& v) {
  if (v.empty()) return std::nullopt;
  MultiPoly g = v[0];
  for (std::size_t i = 1; i < v.size(); ++i) {
    g = gcd(g, v[i]);
    if (g.is_constant()) return std::nullopt;
  }
  return g;
}

}  // namespace

PlaneCurveResult plane_curve(const Presentation& p, std::span<const CharacterSample> samples,
                             const EliminationOptions& options) {
  Presentation two = p;
  if (p.generator_count() != 2 || !p.substitutions.empty())
    two = two_generator_reduction(p).reduced;
  if (two.generator_count() != 2)
    throw ReductionError("plane curve needs a two-generator presentation");

  const auto& vars = elim_vars();
  auto lift = [&](const MultiPoly& f) { return f.with_vars(vars); };
  const MultiPoly X = MultiPoly::variable(vars, "x");
  const MultiPoly Y = MultiPoly::variable(vars, "y");
  PlaneCurveResult out;
  Cleaner clean{samples, options.vanish_tolerance};

  TraceEngine engine;
  std::vector<MultiPoly> ideal, peripheral;
  for (const auto& f : character_ideal(two)) ideal.push_back(lift(f));
  peripheral.push_back(Y - lift(engine.trace(two.longitude)));

  // A meridian equal to a generator lets its trace variable be replaced by x.
  std::vector<int> pending{0, 1, 2};
  const auto& ml = two.meridian.letters();
  if (ml.size() == 1 && std::abs(ml[0].exponent) == 1) {
    int var = ml[0].generator;  // x1 or x2
    for (auto& f : ideal) f = f.substitute(var, X);
    for (auto& f : peripheral) f = f.substitute(var, X);
    pending.erase(std::find(pending.begin(), pending.end(), var));
    out.log.push_back("meridian is generator " + two.name(var) + ": " + vars[var] + " := x");
  } else {
    peripheral.push_back(X - lift(engine.trace(two.meridian)));
  }

  std::vector<int> order;
  for (const auto& name : options.order) {
    int v = MultiPoly(vars).var_index(name);
    if (v > 2) throw std::invalid_argument("only trace variables can be eliminated");
    if (std::find(pending.begin(), pending.end(), v) != pending.end() &&
        std::find(order.begin(), order.end(), v) == order.end())
      order.push_back(v);
  }
  for (int v : pending)
    if (std::find(order.begin(), order.end(), v) == order.end()) order.push_back(v);

  auto clean_all = [&](std::vector<MultiPoly>& polys) {
    std::vector<MultiPoly> next;
    for (const auto& f : polys)
      if (auto c = clean(f)) add_unique(next, std::move(*c));
    polys = std::move(next);
  };
  clean_all(ideal);
  clean_all(peripheral);

  for (int v : order) {
    const std::string stage = "eliminate " + vars[v];
    std::vector<MultiPoly> with, next_ideal, next_peripheral;
    for (auto& f : ideal) (f.contains(v) ? with : next_ideal).push_back(f);
    for (std::size_t i = 0; i < with.size(); ++i)
      for (std::size_t j = i + 1; j < with.size(); ++j)
        if (auto c = clean(resultant(with[i], with[j], v))) add_unique(next_ideal, std::move(*c));
    // Every ideal member gives its own resultant; their extraneous factors
    // differ, so the final gcd removes most of them.
    for (auto& f : peripheral) {
      if (!f.contains(v)) {
        add_unique(next_peripheral, f);
        continue;
      }
      for (const auto& g : with)
        if (auto c = clean(resultant(f, g, v))) add_unique(next_peripheral, std::move(*c));
    }
    if (next_ideal.size() >= 2) {
      if (auto g = common_gcd(next_ideal))
        if (auto c = clean(*g)) next_ideal = {*c};
    }
    ideal = std::move(next_ideal);
    peripheral = std::move(next_peripheral);
    std::ostringstream os;
    os << stage << ": " << ideal.size() << " ideal, " << peripheral.size() << " peripheral";
    for (const auto& f : peripheral) os << "; " << describe(f);
    out.log.push_back(os.str());
    if (peripheral.empty())
      throw EliminationError(stage, "no peripheral polynomial survived elimination");
  }

  std::vector<MultiPoly> finals;
  const int xi = 3, yi = 4;
  for (const auto& f : peripheral) {
    auto s = f.support();
    if (std::all_of(s.begin(), s.end(), [&](int v) { return v == xi || v == yi; }) &&
        f.contains(xi) && f.contains(yi))
      finals.push_back(f);
  }
  if (finals.empty())
    throw EliminationError("final", "elimination left no polynomial in both x and y");
  MultiPoly curve = finals[0];
  if (finals.size() > 1) {
    if (auto g = common_gcd(finals)) curve = *g;
  }
  out.curve = curve.with_vars({"x", "y"}).primitive();
  out.log.push_back("curve: " + describe(out.curve));
  return out;
}

double curve_residual(const MultiPoly& curve, std::span<const CharacterSample> samples) {
  double worst = 0.0;
  for (const auto& s : samples) {
    std::vector<std::complex<double>> pt{s.x, s.y};
    double r = std::abs(curve.evaluate(pt)) / curve.magnitude(pt);
    worst = std::max(worst, r);
  }
  return worst;
}

}  // namespace regen
