#include "regen/multipoly.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace regen {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

std::string trim_copy(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

MultiPoly::MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {
  require(vars_.size() <= 8, "at most 8 variables are supported");
}

MultiPoly MultiPoly::constant(std::vector<std::string> vars, const mpq_class& c) {
  MultiPoly p(std::move(vars));
  if (c != 0) p.terms_.emplace_back(0, c);
  return p;
}

MultiPoly MultiPoly::variable(std::vector<std::string> vars, int index) {
  MultiPoly p(std::move(vars));
  require(index >= 0 && index < p.nvars(), "variable index out of range");
  std::vector<int> e(p.nvars(), 0);
  e[index] = 1;
  p.terms_.emplace_back(p.pack(e), mpq_class(1));
  return p;
}

MultiPoly MultiPoly::variable(std::vector<std::string> vars, std::string_view name) {
  MultiPoly p(vars);
  return variable(std::move(vars), p.var_index(name));
}

MultiPoly MultiPoly::monomial(std::vector<std::string> vars, const std::vector<int>& exps,
                              const mpq_class& c) {
  MultiPoly p(std::move(vars));
  if (c != 0) p.terms_.emplace_back(p.pack(exps), c);
  return p;
}

int MultiPoly::var_index(std::string_view name) const {
  for (int i = 0; i < nvars(); ++i)
    if (vars_[i] == name) return i;
  throw std::invalid_argument("unknown variable " + std::string(name));
}

int MultiPoly::field_bits() const {
  if (vars_.empty()) return 16;
  return std::min<int>(16, 64 / static_cast<int>(vars_.size()));
}

MultiPoly::Monomial MultiPoly::pack(const std::vector<int>& exps) const {
  require(static_cast<int>(exps.size()) == nvars(), "exponent vector has wrong length");
  const int b = field_bits();
  const int cap = (1 << b) - 1;
  Monomial m = 0;
  for (int i = 0; i < nvars(); ++i) {
    require(exps[i] >= 0 && exps[i] <= cap, "exponent out of packable range");
    m |= static_cast<Monomial>(exps[i]) << (b * (nvars() - 1 - i));
  }
  return m;
}

int MultiPoly::exponent(Monomial m, int var) const {
  const int b = field_bits();
  return static_cast<int>((m >> (b * (nvars() - 1 - var))) & ((Monomial(1) << b) - 1));
}

std::vector<int> MultiPoly::exponents(Monomial m) const {
  std::vector<int> e(nvars());
  for (int i = 0; i < nvars(); ++i) e[i] = exponent(m, i);
  return e;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0);
}

mpq_class MultiPoly::constant_term() const {
  if (!terms_.empty() && terms_.back().first == 0) return terms_.back().second;
  return 0;
}

int MultiPoly::degree(int var) const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, exponent(t.first, var));
  return terms_.empty() ? -1 : d;
}

int MultiPoly::total_degree() const {
  int d = -1;
  for (const auto& t : terms_) {
    int s = 0;
    for (int i = 0; i < nvars(); ++i) s += exponent(t.first, i);
    d = std::max(d, s);
  }
  return d;
}

std::vector<int> MultiPoly::support() const {
  std::vector<int> s;
  for (int i = 0; i < nvars(); ++i)
    if (degree(i) > 0) s.push_back(i);
  return s;
}

const mpq_class& MultiPoly::leading_coefficient() const {
  require(!terms_.empty(), "zero polynomial has no leading coefficient");
  return terms_.front().second;
}

void MultiPoly::check_same_vars(const MultiPoly& o) const {
  if (vars_ != o.vars_) throw std::invalid_argument("polynomials over different variables");
}

void MultiPoly::normalize_sorted() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.first > b.first; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
    } else {
      if (!out.empty() && out.back().second == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().second == 0) out.pop_back();
  terms_ = std::move(out);
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return o;
  check_same_vars(o);
  MultiPoly r(vars_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first > o.terms_[j].first)) {
      r.terms_.push_back(terms_[i++]);
    } else if (i == terms_.size() || o.terms_[j].first > terms_[i].first) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      mpq_class c = terms_[i].second + o.terms_[j].second;
      if (c != 0) r.terms_.emplace_back(terms_[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator*(const mpq_class& c) const {
  if (c == 0) return MultiPoly(vars_);
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.second *= c;
  return r;
}

MultiPoly operator*(const mpq_class& c, const MultiPoly& p) { return p * c; }

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  if (terms_.empty() || o.terms_.empty()) return MultiPoly(vars_.empty() ? o.vars_ : vars_);
  check_same_vars(o);
  const int cap = (1 << field_bits()) - 1;
  for (int v = 0; v < nvars(); ++v)
    if (degree(v) + o.degree(v) > cap) throw std::overflow_error("monomial degree overflow");
  MultiPoly r(vars_);
  if (terms_.size() == 1 || o.terms_.size() == 1) {
    const MultiPoly& big = terms_.size() == 1 ? o : *this;
    const Term& t = terms_.size() == 1 ? terms_[0] : o.terms_[0];
    r.terms_.reserve(big.terms_.size());
    for (const auto& u : big.terms_) r.terms_.emplace_back(u.first + t.first, u.second * t.second);
    return r;  // adding a fixed monomial preserves the order
  }
  std::unordered_map<Monomial, mpq_class> acc;
  acc.reserve(terms_.size() * o.terms_.size() / 2 + 16);
  mpq_class tmp;
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) {
      mpq_mul(tmp.get_mpq_t(), a.second.get_mpq_t(), b.second.get_mpq_t());
      auto [it, fresh] = acc.try_emplace(a.first + b.first);
      if (fresh)
        it->second = tmp;
      else
        it->second += tmp;
    }
  }
  r.terms_.reserve(acc.size());
  for (auto& kv : acc)
    if (kv.second != 0) r.terms_.emplace_back(kv.first, std::move(kv.second));
  std::sort(r.terms_.begin(), r.terms_.end(),
            [](const Term& x, const Term& y) { return x.first > y.first; });
  return r;
}

MultiPoly MultiPoly::pow(unsigned k) const {
  MultiPoly acc = constant(vars_, 1);
  MultiPoly base = *this;
  while (k) {
    if (k & 1u) acc = acc * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return acc;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  if (terms_.empty() && o.terms_.empty()) return true;
  return vars_ == o.vars_ && terms_ == o.terms_;
}

std::vector<MultiPoly> MultiPoly::coefficients_in(int var) const {
  const int b = field_bits();
  const int shift = b * (nvars() - 1 - var);
  const Monomial mask = ((Monomial(1) << b) - 1) << shift;
  std::vector<MultiPoly> out(std::max(degree(var) + 1, 0), MultiPoly(vars_));
  for (const auto& t : terms_) {
    int k = static_cast<int>((t.first & mask) >> shift);
    out[k].terms_.emplace_back(t.first & ~mask, t.second);
  }
  return out;
}

MultiPoly MultiPoly::from_coefficients(const std::vector<MultiPoly>& coeffs, int var,
                                       const std::vector<std::string>& vars) {
  MultiPoly r(vars);
  std::vector<int> e(r.nvars(), 0);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k].is_zero()) continue;
    coeffs[k].check_same_vars(r);
    e[var] = static_cast<int>(k);
    Monomial shift = r.pack(e);
    for (const auto& t : coeffs[k].terms_) {
      require(r.exponent(t.first, var) == 0, "coefficient still contains the variable");
      r.terms_.emplace_back(t.first + shift, t.second);
    }
  }
  std::sort(r.terms_.begin(), r.terms_.end(),
            [](const Term& x, const Term& y) { return x.first > y.first; });
  return r;
}

MultiPoly MultiPoly::derivative(int var) const {
  MultiPoly r(vars_);
  std::vector<int> unit(nvars(), 0);
  unit[var] = 1;
  const Monomial one = pack(unit);
  for (const auto& t : terms_) {
    int k = exponent(t.first, var);
    if (k == 0) continue;
    r.terms_.emplace_back(t.first - one, t.second * k);
  }
  return r;  // order is preserved by subtracting a fixed unit
}

MultiPoly MultiPoly::substitute(int var, const mpq_class& value) const {
  auto cs = coefficients_in(var);
  MultiPoly r(vars_);
  for (auto it = cs.rbegin(); it != cs.rend(); ++it) r = r * value + *it;
  return r;
}

MultiPoly MultiPoly::substitute(int var, const mpz_class& value) const {
  return substitute(var, mpq_class(value));
}

MultiPoly MultiPoly::substitute(int var, const MultiPoly& value) const {
  auto cs = coefficients_in(var);
  MultiPoly r(vars_);
  for (auto it = cs.rbegin(); it != cs.rend(); ++it) r = r * value + *it;
  return r;
}

MultiPoly MultiPoly::with_vars(const std::vector<std::string>& vars) const {
  MultiPoly r(vars);
  std::vector<int> map(nvars(), -1);
  for (int i = 0; i < nvars(); ++i) {
    for (int j = 0; j < r.nvars(); ++j)
      if (vars[j] == vars_[i]) map[i] = j;
    if (map[i] < 0 && degree(i) > 0)
      throw std::invalid_argument("variable " + vars_[i] + " missing from target list");
  }
  for (const auto& t : terms_) {
    std::vector<int> e(r.nvars(), 0);
    for (int i = 0; i < nvars(); ++i)
      if (map[i] >= 0) e[map[i]] = exponent(t.first, i);
    r.terms_.emplace_back(r.pack(e), t.second);
  }
  r.normalize_sorted();
  return r;
}

MultiPoly MultiPoly::deflate(int var) const {
  MultiPoly r(vars_);
  for (const auto& t : terms_) {
    auto e = exponents(t.first);
    require(e[var] % 2 == 0, "deflate needs even exponents");
    e[var] /= 2;
    r.terms_.emplace_back(pack(e), t.second);
  }
  r.normalize_sorted();
  return r;
}

mpq_class MultiPoly::content() const {
  if (terms_.empty()) return 0;
  mpz_class num = 0, den = 1;
  for (const auto& t : terms_) {
    mpz_class a = abs(t.second.get_num());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), a.get_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.second.get_den_mpz_t());
  }
  mpq_class c(num, den);
  c.canonicalize();
  if (terms_.front().second < 0) c = -c;
  return c;
}

MultiPoly MultiPoly::primitive() const {
  if (terms_.empty()) return *this;
  mpq_class c = content();
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.second /= c;
  return r;
}

bool MultiPoly::is_integral() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return t.second.get_den() == 1; });
}

std::optional<MultiPoly> MultiPoly::divide(const MultiPoly& d) const {
  require(!d.is_zero(), "division by zero polynomial");
  if (is_zero()) return MultiPoly(d.vars_);
  check_same_vars(d);
  std::vector<int> room(nvars());
  for (int v = 0; v < nvars(); ++v) {
    room[v] = degree(v) - d.degree(v);
    if (room[v] < 0) return std::nullopt;
  }
  if (d.terms_.size() == 1) {
    MultiPoly q(vars_);
    const auto& [md, cd] = d.terms_[0];
    for (const auto& t : terms_) {
      for (int v = 0; v < nvars(); ++v)
        if (exponent(t.first, v) < d.exponent(md, v)) return std::nullopt;
      q.terms_.emplace_back(t.first - md, t.second / cd);
    }
    return q;
  }
  std::map<Monomial, mpq_class, std::greater<>> r;
  for (const auto& t : terms_) r.emplace(t.first, t.second);
  const auto& [md, cd] = d.terms_.front();
  MultiPoly q(vars_);
  mpq_class tmp;
  while (!r.empty()) {
    auto top = r.begin();
    Monomial m = top->first;
    for (int v = 0; v < nvars(); ++v) {
      int e = exponent(m, v) - d.exponent(md, v);
      if (e < 0 || e > room[v]) return std::nullopt;
    }
    Monomial qm = m - md;
    mpq_class qc = top->second / cd;
    r.erase(top);
    for (std::size_t k = 1; k < d.terms_.size(); ++k) {
      mpq_mul(tmp.get_mpq_t(), qc.get_mpq_t(), d.terms_[k].second.get_mpq_t());
      auto [it, fresh] = r.try_emplace(d.terms_[k].first + qm);
      if (fresh) {
        it->second = -tmp;
      } else {
        it->second -= tmp;
        if (it->second == 0) r.erase(it);
      }
    }
    q.terms_.emplace_back(qm, std::move(qc));
  }
  return q;
}

std::complex<double> MultiPoly::evaluate(const std::vector<std::complex<double>>& point) const {
  require(static_cast<int>(point.size()) == nvars(), "evaluation point has wrong dimension");
  std::vector<std::vector<std::complex<double>>> pw(nvars());
  for (int i = 0; i < nvars(); ++i) {
    int d = std::max(degree(i), 0);
    pw[i].resize(d + 1);
    pw[i][0] = 1.0;
    for (int k = 1; k <= d; ++k) pw[i][k] = pw[i][k - 1] * point[i];
  }
  std::complex<double> s = 0.0;
  for (const auto& t : terms_) {
    std::complex<double> m = t.second.get_d();
    for (int i = 0; i < nvars(); ++i) m *= pw[i][exponent(t.first, i)];
    s += m;
  }
  return s;
}

double MultiPoly::magnitude(const std::vector<std::complex<double>>& point) const {
  require(static_cast<int>(point.size()) == nvars(), "evaluation point has wrong dimension");
  double s = 0.0;
  for (const auto& t : terms_) {
    double m = std::abs(t.second.get_d());
    for (int i = 0; i < nvars(); ++i) m *= std::pow(std::abs(point[i]), exponent(t.first, i));
    s += m;
  }
  return s;
}

double MultiPoly::max_coefficient() const {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, std::abs(t.second.get_d()));
  return m;
}

std::string MultiPoly::serialize() const {
  if (terms_.empty()) return "0\n";
  std::string out;
  for (const auto& t : terms_) {
    out += t.second.get_str();
    for (int i = 0; i < nvars(); ++i)
      out += " * " + vars_[i] + "^" + std::to_string(exponent(t.first, i));
    out += '\n';
  }
  return out;
}

MultiPoly MultiPoly::parse(std::string_view text, const std::vector<std::string>& vars) {
  MultiPoly r(vars);
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::string l = trim_copy(line);
    if (l.empty() || l[0] == '#') continue;
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= l.size(); ++i) {
      if (i == l.size() || l[i] == '*') {
        parts.push_back(trim_copy(std::string_view(l).substr(start, i - start)));
        start = i + 1;
      }
    }
    mpq_class c;
    if (c.set_str(parts[0], 10) != 0) throw std::invalid_argument("bad coefficient: " + parts[0]);
    c.canonicalize();
    std::vector<int> e(r.nvars(), 0);
    for (std::size_t k = 1; k < parts.size(); ++k) {
      auto caret = parts[k].find('^');
      std::string name = trim_copy(std::string_view(parts[k]).substr(0, caret));
      int ex = caret == std::string::npos ? 1 : std::stoi(parts[k].substr(caret + 1));
      e[r.var_index(name)] += ex;
    }
    if (c != 0) r.terms_.emplace_back(r.pack(e), c);
  }
  r.normalize_sorted();
  return r;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    mpq_class c = t.second;
    if (!first) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    first = false;
    c = abs(c);
    std::string mono;
    for (int i = 0; i < nvars(); ++i) {
      int e = exponent(t.first, i);
      if (!e) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_[i];
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty()) out += c.get_str();
    else if (c == 1) out += mono;
    else out += c.get_str() + "*" + mono;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Univariate views and the subresultant sequence.

namespace {

using UPoly = std::vector<MultiPoly>;  // ascending coefficients, no zero top

void trim(UPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int deg(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

UPoly view(const MultiPoly& f, int var) {
  UPoly p = f.coefficients_in(var);
  trim(p);
  return p;
}

MultiPoly exact_div(const MultiPoly& a, const MultiPoly& b) {
  auto q = a.divide(b);
  if (!q) throw std::logic_error("expected exact polynomial division");
  return *q;
}

UPoly prem(const UPoly& a, const UPoly& b) {
  if (deg(a) < deg(b)) return a;
  const MultiPoly& lb = b.back();
  int steps = deg(a) - deg(b) + 1;
  UPoly r = a;
  while (steps > 0 && deg(r) >= deg(b)) {
    MultiPoly lr = r.back();
    int k = deg(r) - deg(b);
    for (auto& c : r) c = c * lb;
    for (int i = 0; i < deg(b); ++i) r[i + k] -= lr * b[i];
    r.pop_back();
    trim(r);
    --steps;
  }
  if (steps > 0 && !r.empty()) {
    MultiPoly s = lb.pow(static_cast<unsigned>(steps));
    for (auto& c : r) c = c * s;
  }
  return r;
}

}  // namespace

MultiPoly pseudo_remainder(const MultiPoly& f, const MultiPoly& g, int var) {
  UPoly r = prem(view(f, var), view(g, var));
  return MultiPoly::from_coefficients(r, var, f.vars());
}

MultiPoly resultant(const MultiPoly& f, const MultiPoly& g, int var) {
  const auto& vars = f.vars();
  if (f.is_zero() || g.is_zero()) return MultiPoly(vars);
  UPoly a = view(f, var), b = view(g, var);
  MultiPoly one = MultiPoly::constant(vars, 1);
  int s = 1;
  if (deg(a) < deg(b)) {
    std::swap(a, b);
    if (deg(a) % 2 && deg(b) % 2) s = -1;
  }
  if (deg(b) == 0) return b[0].pow(static_cast<unsigned>(deg(a)));
  MultiPoly gg = one, h = one;
  while (true) {
    int delta = deg(a) - deg(b);
    if (deg(a) % 2 && deg(b) % 2) s = -s;
    UPoly r = prem(a, b);
    a = b;
    if (r.empty()) return MultiPoly(vars);
    MultiPoly div = gg * h.pow(static_cast<unsigned>(delta));
    for (auto& c : r) c = exact_div(c, div);
    b = std::move(r);
    gg = a.back();
    if (delta == 1)
      h = gg;
    else if (delta > 1)
      h = exact_div(gg.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)));
    if (deg(b) > 0) continue;
    int da = deg(a);
    MultiPoly res = b[0].pow(static_cast<unsigned>(da));
    if (da > 1) res = exact_div(res, h.pow(static_cast<unsigned>(da - 1)));
    return s < 0 ? -res : res;
  }
}

// ---------------------------------------------------------------------------
// GCD: heuristic evaluation/interpolation with a primitive-PRS fallback.

namespace {

struct HeuristicFailed {};

mpz_class max_norm(const MultiPoly& p) {
  mpz_class m = 0;
  for (const auto& t : p.terms()) {
    mpz_class a = abs(t.second.get_num());
    if (a > m) m = a;
  }
  return m;
}

mpz_class integer_content(const MultiPoly& p) {
  mpz_class g = 0;
  for (const auto& t : p.terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.second.get_num_mpz_t());
  return g;
}

std::vector<int> union_support(const MultiPoly& f, const MultiPoly& g) {
  std::vector<int> s;
  for (int i = 0; i < f.nvars(); ++i)
    if (f.degree(i) > 0 || g.degree(i) > 0) s.push_back(i);
  return s;
}

// Symmetric xi-adic reconstruction of h as a polynomial in var.
MultiPoly interpolate(MultiPoly h, const mpz_class& xi, int var) {
  const std::vector<std::string> vars = h.vars();
  std::vector<MultiPoly> coeffs;
  mpz_class half = xi / 2;
  while (!h.is_zero()) {
    MultiPoly c(vars);
    for (const auto& t : h.terms()) {
      mpz_class r;
      mpz_fdiv_r(r.get_mpz_t(), t.second.get_num_mpz_t(), xi.get_mpz_t());
      if (r > half) r -= xi;
      if (r != 0) c += MultiPoly::monomial(h.vars(), h.exponents(t.first), mpq_class(r));
    }
    h = (h - c) * mpq_class(1, xi);
    coeffs.push_back(std::move(c));
  }
  return MultiPoly::from_coefficients(coeffs, var, vars);
}

// Integer gcd of two polynomials with integer coefficients, content included.
MultiPoly heuristic_gcd(const MultiPoly& f, const MultiPoly& g) {
  const auto& vars = f.vars();
  if (f.is_zero()) return g;
  if (g.is_zero()) return f;
  auto sup = union_support(f, g);
  mpz_class cf = integer_content(f), cg = integer_content(g);
  mpz_class c;
  mpz_gcd(c.get_mpz_t(), cf.get_mpz_t(), cg.get_mpz_t());
  if (sup.empty()) return MultiPoly::constant(vars, mpq_class(c));
  if (f.is_constant() || g.is_constant()) return MultiPoly::constant(vars, mpq_class(c));
  MultiPoly fp = f * mpq_class(1, cf), gp = g * mpq_class(1, cg);
  const int var = sup.front();
  mpz_class fn = max_norm(fp), gn = max_norm(gp);
  mpz_class b = 2 * std::min(fn, gn) + 29;
  mpz_class sq = sqrt(b);
  mpz_class lf = abs(fp.coefficients_in(var).back().leading_coefficient().get_num());
  mpz_class lg = abs(gp.coefficients_in(var).back().leading_coefficient().get_num());
  mpz_class xi = std::max<mpz_class>(std::min<mpz_class>(b, 99 * sq),
                                      2 * std::min<mpz_class>(fn / lf, gn / lg) + 4);
  const int dmax = std::max(fp.degree(var), gp.degree(var));
  for (int attempt = 0; attempt < 6; ++attempt) {
    if (mpz_sizeinbase(xi.get_mpz_t(), 2) * static_cast<std::size_t>(dmax + 1) > (1u << 24))
      throw HeuristicFailed{};
    MultiPoly ff = fp.substitute(var, xi), gg = gp.substitute(var, xi);
    if (!ff.is_zero() && !gg.is_zero()) {
      MultiPoly h = heuristic_gcd(ff, gg);
      h = interpolate(h, xi, var);
      if (!h.is_zero()) {
        h = h.primitive();
        if (fp.divide(h) && gp.divide(h)) return h * mpq_class(c);
      }
    }
    mpz_class r4 = sqrt(sqrt(xi));
    xi = 73794 * xi * r4 / 27011;
  }
  throw HeuristicFailed{};
}

MultiPoly gcd_prs(const MultiPoly& f, const MultiPoly& g);

// gcd of the coefficients of f viewed as a polynomial in var.
MultiPoly content_in(const MultiPoly& f, int var) {
  MultiPoly c(f.vars());
  for (const auto& k : f.coefficients_in(var)) {
    if (k.is_zero()) continue;
    c = c.is_zero() ? k.primitive() : gcd(c, k);
    if (c.is_constant()) break;
  }
  return c.primitive();
}

MultiPoly gcd_prs(const MultiPoly& f, const MultiPoly& g) {
  const auto& vars = f.vars();
  if (f.is_zero()) return g.primitive();
  if (g.is_zero()) return f.primitive();
  auto sup = union_support(f, g);
  if (sup.empty() || f.is_constant() || g.is_constant()) return MultiPoly::constant(vars, 1);
  int v = sup.front();
  if (!f.contains(v)) return gcd(f, content_in(g, v));
  if (!g.contains(v)) return gcd(g, content_in(f, v));
  MultiPoly cf = content_in(f, v), cg = content_in(g, v);
  MultiPoly c = gcd(cf, cg);
  UPoly a = view(exact_div(f, cf), v), b = view(exact_div(g, cg), v);
  if (deg(a) < deg(b)) std::swap(a, b);
  while (true) {
    UPoly r = prem(a, b);
    if (r.empty()) break;
    if (deg(r) == 0) {
      b = UPoly{MultiPoly::constant(vars, 1)};
      break;
    }
    a = std::move(b);
    MultiPoly rp = MultiPoly::from_coefficients(r, v, vars);
    b = view(exact_div(rp, content_in(rp, v)), v);
  }
  MultiPoly pb = MultiPoly::from_coefficients(b, v, vars);
  if (pb.contains(v)) pb = exact_div(pb, content_in(pb, v));
  return (c * pb).primitive();
}

}  // namespace

MultiPoly gcd(const MultiPoly& f, const MultiPoly& g) {
  if (f.is_zero() && g.is_zero()) return f;
  if (f.is_zero()) return g.primitive();
  if (g.is_zero()) return f.primitive();
  MultiPoly fp = f.primitive(), gp = g.primitive();
  if (fp == gp) return fp;
  try {
    return heuristic_gcd(fp, gp).primitive();
  } catch (const HeuristicFailed&) {
    return gcd_prs(fp, gp);
  }
}

std::vector<std::pair<MultiPoly, int>> squarefree_decomposition(const MultiPoly& f) {
  std::vector<std::pair<MultiPoly, int>> out;
  if (f.is_zero()) return out;
  MultiPoly p = f.primitive();
  if (p.is_constant()) return out;
  // Contents in the later variables are split off first so they are reported
  // as separate factors rather than merged by multiplicity.
  const auto sup = p.support();
  for (std::size_t i = 1; i < sup.size(); ++i) {
    MultiPoly c = content_in(p, sup[i]);
    if (c.is_constant()) continue;
    out = squarefree_decomposition(c);
    for (auto& fc : squarefree_decomposition(exact_div(p, c))) out.push_back(std::move(fc));
    return out;
  }
  int v = sup.front();
  MultiPoly cont = content_in(p, v);
  MultiPoly q = exact_div(p, cont);
  MultiPoly dq = q.derivative(v);
  MultiPoly a = gcd(q, dq);
  MultiPoly b = exact_div(q, a);
  MultiPoly c = exact_div(dq, a);
  MultiPoly d = c - b.derivative(v);
  for (int i = 1; b.contains(v); ++i) {
    a = gcd(b, d);
    if (a.contains(v)) out.emplace_back(a.primitive(), i);
    b = exact_div(b, a);
    c = exact_div(d, a);
    d = c - b.derivative(v);
  }
  for (auto& fc : squarefree_decomposition(cont)) out.push_back(std::move(fc));
  return out;
}

}  // namespace regen
