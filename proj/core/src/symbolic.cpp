#include "dunkl/symbolic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <tuple>

#include "dunkl/special.hpp"

namespace dunkl::sym {
namespace {

bool cless(cplx a, cplx b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

bool vless(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), cless);
}

TermKey unit_key(std::size_t dim) {
  TermKey k;
  k.mono.assign(dim, 0);
  k.expo.assign(dim, cplx(0.0));
  return k;
}

void insert_pow(std::vector<PowFactor>& pows, const PowFactor& p) {
  for (auto it = pows.begin(); it != pows.end(); ++it) {
    if (it->base == p.base) {
      it->r += p.r;
      if (it->r == 0.0) pows.erase(it);
      return;
    }
  }
  pows.push_back(p);
  std::sort(pows.begin(), pows.end());
}

TermKey multiply_keys(const TermKey& a, const TermKey& b) {
  TermKey k = a;
  for (std::size_t j = 0; j < k.mono.size(); ++j) {
    k.mono[j] += b.mono[j];
    k.expo[j] += b.expo[j];
  }
  k.bessel.insert(k.bessel.end(), b.bessel.begin(), b.bessel.end());
  std::sort(k.bessel.begin(), k.bessel.end());
  for (const auto& p : b.pows) insert_pow(k.pows, p);
  return k;
}

std::string fmt_real(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string fmt_cplx(cplx c) {
  if (c.imag() == 0.0) {
    const std::string s = fmt_real(c.real());
    return c.real() < 0.0 ? "(" + s + ")" : s;
  }
  return "(" + fmt_real(c.real()) + "+" + fmt_real(c.imag()) + "*i)";
}

std::string var(int axis) { return "x" + std::to_string(axis + 1); }

std::string term_string(const TermKey& k, cplx coeff) {
  std::vector<std::string> factors;
  factors.push_back(fmt_cplx(coeff));
  for (std::size_t j = 0; j < k.mono.size(); ++j)
    if (k.mono[j] > 0) factors.push_back(var(static_cast<int>(j)) + "^" + std::to_string(2 * k.mono[j]));
  std::string ex;
  for (std::size_t j = 0; j < k.expo.size(); ++j) {
    if (k.expo[j] == cplx(0.0)) continue;
    if (!ex.empty()) ex += "+";
    ex += fmt_cplx(k.expo[j]) + "*" + var(static_cast<int>(j)) + "^2";
  }
  if (!ex.empty()) factors.push_back("exp(" + ex + ")");
  for (const auto& b : k.bessel)
    factors.push_back("bessel(" + fmt_real(b.alpha) + "," + fmt_cplx(std::sqrt(b.a)) + "*" +
                      var(b.axis) + ")");
  for (const auto& p : k.pows) {
    std::string base = fmt_cplx(p.base[0]);
    for (std::size_t j = 1; j < p.base.size(); ++j)
      if (p.base[j] != cplx(0.0))
        base += "+" + fmt_cplx(p.base[j]) + "*" + var(static_cast<int>(j - 1)) + "^2";
    factors.push_back("pow(" + base + "," + fmt_real(p.r) + ")");
  }
  std::string out;
  for (std::size_t i = 0; i < factors.size(); ++i) out += (i ? "*" : "") + factors[i];
  return out;
}

}  // namespace

bool operator<(const BesselFactor& a, const BesselFactor& b) {
  if (a.axis != b.axis) return a.axis < b.axis;
  if (a.alpha != b.alpha) return a.alpha < b.alpha;
  return cless(a.a, b.a);
}

bool operator==(const BesselFactor& a, const BesselFactor& b) {
  return a.axis == b.axis && a.alpha == b.alpha && a.a == b.a;
}

bool operator<(const PowFactor& a, const PowFactor& b) {
  if (a.base != b.base) return vless(a.base, b.base);
  return a.r < b.r;
}


bool operator<(const TermKey& a, const TermKey& b) {
  if (a.mono != b.mono) return a.mono < b.mono;
  if (a.expo != b.expo) return vless(a.expo, b.expo);
  if (a.bessel != b.bessel)
    return std::lexicographical_compare(a.bessel.begin(), a.bessel.end(), b.bessel.begin(),
                                        b.bessel.end());
  return std::lexicographical_compare(a.pows.begin(), a.pows.end(), b.pows.begin(), b.pows.end());
}

// ---------------------------------------------------------------------------
// EvenForm

EvenForm EvenForm::constant(std::size_t dim, cplx c) {
  EvenForm h(dim);
  h.add_term(unit_key(dim), c);
  return h;
}

void EvenForm::add_term(const TermKey& key, cplx coeff) {
  if (coeff == cplx(0.0)) return;
  auto [it, inserted] = terms_.try_emplace(key, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == cplx(0.0)) terms_.erase(it);
  }
}

EvenForm& EvenForm::operator+=(const EvenForm& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

EvenForm& EvenForm::operator*=(cplx c) {
  if (c == cplx(0.0)) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

EvenForm operator+(EvenForm a, const EvenForm& b) { return a += b; }

EvenForm EvenForm::times(const EvenForm& o) const {
  EvenForm out(dim_);
  for (const auto& [ka, ca] : terms_)
    for (const auto& [kb, cb] : o.terms_) out.add_term(multiply_keys(ka, kb), ca * cb);
  return out;
}

EvenForm EvenForm::times_s(int axis) const {
  EvenForm out(dim_);
  for (const auto& [k, c] : terms_) {
    TermKey nk = k;
    nk.mono[axis] += 1;
    out.add_term(nk, c);
  }
  return out;
}

EvenForm EvenForm::ds(int axis) const {
  EvenForm out(dim_);
  for (const auto& [k, c] : terms_) {
    if (k.mono[axis] > 0) {
      TermKey nk = k;
      nk.mono[axis] -= 1;
      out.add_term(nk, c * static_cast<double>(k.mono[axis]));
    }
    if (k.expo[axis] != cplx(0.0)) out.add_term(k, c * k.expo[axis]);
    for (std::size_t i = 0; i < k.bessel.size(); ++i) {
      const auto& b = k.bessel[i];
      if (b.axis != axis) continue;
      TermKey nk = k;
      nk.bessel[i].alpha += 1.0;
      std::sort(nk.bessel.begin(), nk.bessel.end());
      out.add_term(nk, c * (-b.a / (4.0 * (b.alpha + 1.0))));
    }
    for (std::size_t i = 0; i < k.pows.size(); ++i) {
      const auto& p = k.pows[i];
      const cplx slope = p.base[static_cast<std::size_t>(axis) + 1];
      if (slope == cplx(0.0)) continue;
      TermKey nk = k;
      nk.pows[i].r -= 1.0;
      if (nk.pows[i].r == 0.0) nk.pows.erase(nk.pows.begin() + static_cast<std::ptrdiff_t>(i));
      out.add_term(nk, c * p.r * slope);
    }
  }
  return out;
}

bool EvenForm::affine(std::vector<cplx>& base) const {
  base.assign(dim_ + 1, cplx(0.0));
  for (const auto& [k, c] : terms_) {
    if (!k.bessel.empty() || !k.pows.empty()) return false;
    for (auto e : k.expo)
      if (e != cplx(0.0)) return false;
    int degree = 0, axis = -1;
    for (std::size_t j = 0; j < dim_; ++j) {
      degree += k.mono[j];
      if (k.mono[j] > 0) axis = static_cast<int>(j);
    }
    if (degree == 0)
      base[0] += c;
    else if (degree == 1)
      base[static_cast<std::size_t>(axis) + 1] += c;
    else
      return false;
  }
  return true;
}

bool EvenForm::simple_single(TermKey& key, cplx& coeff) const {
  if (terms_.size() != 1) return false;
  const auto& [k, c] = *terms_.begin();
  if (!k.bessel.empty()) return false;
  for (int m : k.mono)
    if (m != 0) return false;
  key = k;
  coeff = c;
  return true;
}

std::size_t EvenForm::max_degree(int axis) const {
  std::size_t m = 0;
  for (const auto& [k, c] : terms_) m = std::max(m, static_cast<std::size_t>(k.mono[axis]));
  return m;
}

// ---------------------------------------------------------------------------
// ParityForm

ParityForm ParityForm::constant(std::size_t dim, cplx c) {
  ParityForm f(dim);
  f.add_component(0, EvenForm::constant(dim, c));
  return f;
}

ParityForm ParityForm::variable(std::size_t dim, int axis) {
  ParityForm f(dim);
  f.add_component(1u << axis, EvenForm::constant(dim, 1.0));
  return f;
}

ParityForm ParityForm::even(EvenForm h) {
  ParityForm f(h.dim());
  f.add_component(0, h);
  return f;
}

std::size_t ParityForm::term_count() const {
  std::size_t n = 0;
  for (const auto& [m, h] : parts_) n += h.terms().size();
  return n;
}

void ParityForm::add_component(std::uint32_t mask, const EvenForm& h) {
  if (h.empty()) return;
  auto [it, inserted] = parts_.try_emplace(mask, h);
  if (!inserted) {
    it->second += h;
    if (it->second.empty()) parts_.erase(it);
  }
}

void ParityForm::prune() {
  for (auto it = parts_.begin(); it != parts_.end();)
    it = it->second.empty() ? parts_.erase(it) : std::next(it);
}

ParityForm& ParityForm::operator+=(const ParityForm& o) {
  for (const auto& [m, h] : o.parts_) add_component(m, h);
  return *this;
}

ParityForm& ParityForm::operator*=(cplx c) {
  for (auto& [m, h] : parts_) h *= c;
  prune();
  return *this;
}

ParityForm operator+(ParityForm a, const ParityForm& b) { return a += b; }

ParityForm operator*(cplx c, ParityForm a) { return a *= c; }

ParityForm ParityForm::times(const ParityForm& o) const {
  ParityForm out(dim_);
  for (const auto& [ma, ha] : parts_) {
    for (const auto& [mb, hb] : o.parts_) {
      EvenForm h = ha.times(hb);
      std::uint32_t overlap = ma & mb;
      while (overlap) {
        const int axis = std::countr_zero(overlap);
        h = h.times_s(axis);
        overlap &= overlap - 1;
      }
      out.add_component(ma ^ mb, h);
    }
  }
  return out;
}

ParityForm ParityForm::partial(int axis) const {
  const std::uint32_t bit = 1u << axis;
  ParityForm out(dim_);
  for (const auto& [mask, h] : parts_) {
    EvenForm dh = h.ds(axis);
    if (mask & bit) {
      // d/dx (x h(x^2)) = h + 2 s h'
      EvenForm g = dh.times_s(axis);
      g *= 2.0;
      g += h;
      out.add_component(mask & ~bit, g);
    } else {
      // d/dx h(x^2) = x * 2 h'
      dh *= 2.0;
      out.add_component(mask | bit, dh);
    }
  }
  return out;
}

ParityForm ParityForm::dunkl(int axis, double gamma) const {
  ParityForm out = partial(axis);
  if (gamma == 0.0) return out;
  const std::uint32_t bit = 1u << axis;
  for (const auto& [mask, h] : parts_) {
    if (!(mask & bit)) continue;
    // gamma (f(x) - f(sigma x)) / x on x h(x^2) is exactly 2 gamma h.
    EvenForm g = h;
    g *= 2.0 * gamma;
    out.add_component(mask & ~bit, g);
  }
  return out;
}

ParityForm ParityForm::reflect(int axis) const {
  const std::uint32_t bit = 1u << axis;
  ParityForm out(dim_);
  for (const auto& [mask, h] : parts_) {
    EvenForm g = h;
    if (mask & bit) g *= -1.0;
    out.add_component(mask, g);
  }
  return out;
}

std::string ParityForm::to_string() const {
  if (parts_.empty()) return "0";
  std::string out;
  for (const auto& [mask, h] : parts_) {
    std::string prefix;
    for (std::size_t j = 0; j < dim_; ++j)
      if (mask & (1u << j)) prefix += var(static_cast<int>(j)) + "*";
    std::string body;
    for (const auto& [k, c] : h.terms()) body += (body.empty() ? "" : "+") + term_string(k, c);
    if (!out.empty()) out += "+";
    out += prefix.empty() ? body : prefix + "(" + body + ")";
  }
  return out;
}

// ---------------------------------------------------------------------------
// CompiledForm

CompiledForm::CompiledForm(const ParityForm& form) : dim_(form.dim()), max_mono_(form.dim(), 0) {
  std::map<std::vector<cplx>, int, decltype(&vless)> expo_ids(&vless);
  std::map<BesselFactor, int> bessel_ids;
  std::map<PowFactor, int> pow_ids;
  for (const auto& [mask, h] : form.components()) {
    for (const auto& [k, c] : h.terms()) {
      Term t;
      t.mask = mask;
      t.coeff = c;
      t.mono = k.mono;
      for (std::size_t j = 0; j < dim_; ++j) max_mono_[j] = std::max(max_mono_[j], k.mono[j]);
      if (std::any_of(k.expo.begin(), k.expo.end(), [](cplx e) { return e != cplx(0.0); })) {
        auto [it, ins] = expo_ids.try_emplace(k.expo, static_cast<int>(expos_.size()));
        if (ins) expos_.push_back(k.expo);
        t.expo = it->second;
      }
      for (const auto& b : k.bessel) {
        auto [it, ins] = bessel_ids.try_emplace(b, static_cast<int>(bessels_.size()));
        if (ins) bessels_.push_back(b);
        t.bessel.push_back(it->second);
      }
      for (const auto& p : k.pows) {
        auto [it, ins] = pow_ids.try_emplace(p, static_cast<int>(pows_.size()));
        if (ins) pows_.push_back(p);
        t.pows.push_back(it->second);
      }
      terms_.push_back(std::move(t));
    }
  }
}

cplx CompiledForm::operator()(std::span<const double> x) const {
  std::vector<double> s(dim_);
  std::vector<std::vector<double>> spow(dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    s[j] = x[j] * x[j];
    spow[j].resize(static_cast<std::size_t>(max_mono_[j]) + 1);
    spow[j][0] = 1.0;
    for (int m = 1; m <= max_mono_[j]; ++m) spow[j][m] = spow[j][m - 1] * s[j];
  }
  std::vector<cplx> ev(expos_.size());
  for (std::size_t i = 0; i < expos_.size(); ++i) {
    cplx arg = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) arg += expos_[i][j] * s[j];
    ev[i] = std::exp(arg);
  }
  std::vector<cplx> bv(bessels_.size());
  for (std::size_t i = 0; i < bessels_.size(); ++i) {
    const auto& b = bessels_[i];
    bv[i] = bessel_hat(b.alpha, b.a * s[static_cast<std::size_t>(b.axis)]);
  }
  std::vector<cplx> pv(pows_.size());
  for (std::size_t i = 0; i < pows_.size(); ++i) {
    const auto& p = pows_[i];
    cplx base = p.base[0];
    for (std::size_t j = 0; j < dim_; ++j) base += p.base[j + 1] * s[j];
    if (base.imag() == 0.0 && (base.real() > 0.0 || p.r == std::floor(p.r)))
      pv[i] = std::pow(base.real(), p.r);
    else
      pv[i] = std::pow(base, p.r);
  }

  cplx sum = 0.0;
  for (const auto& t : terms_) {
    cplx v = t.coeff;
    double real_part = 1.0;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (t.mask & (1u << j)) real_part *= x[j];
      real_part *= spow[j][static_cast<std::size_t>(t.mono[j])];
    }
    v *= real_part;
    if (t.expo >= 0) v *= ev[static_cast<std::size_t>(t.expo)];
    for (int b : t.bessel) v *= bv[static_cast<std::size_t>(b)];
    for (int p : t.pows) v *= pv[static_cast<std::size_t>(p)];
    sum += v;
  }
  return sum;
}

}  // namespace dunkl::sym
