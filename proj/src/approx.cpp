#include "dioph/approx.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "dioph/errors.hpp"

namespace dioph {

namespace {

std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

const Scalar& log3() {
  static const Scalar v = log_scalar(Scalar(3));
  return v;
}

}  // namespace

ApproxFunction ApproxFunction::power(const Scalar& tau) {
  require(tau.sign() > 0, "Power requires tau > 0");
  ApproxFunction f;
  f.family_ = Family::Power;
  f.p0_ = tau;
  return f;
}

ApproxFunction ApproxFunction::scaled_power(const Scalar& c, const Scalar& tau) {
  require(c.sign() > 0, "ScaledPower requires c > 0");
  require(tau.sign() > 0, "ScaledPower requires tau > 0");
  ApproxFunction f;
  f.family_ = Family::ScaledPower;
  f.p0_ = c;
  f.p1_ = tau;
  return f;
}

ApproxFunction ApproxFunction::log_power(const Scalar& a, const Scalar& b) {
  require(b.sign() > 0, "LogPower requires b > 0");
  require(compare_or_tie(a, -log3()) > 0, "LogPower requires a > -ln 3 (non-increasing for q >= 3)");
  ApproxFunction f;
  f.family_ = Family::LogPower;
  f.p0_ = a;
  f.p1_ = b;
  return f;
}

ApproxFunction ApproxFunction::psi_k(std::uint64_t k, std::uint64_t n) {
  require(k >= 1 && n >= 1, "PsiK requires k >= 1 and n >= 1");
  ApproxFunction f;
  f.family_ = Family::PsiK;
  f.p0_ = Scalar(BigInt(k));
  f.p1_ = Scalar(BigInt(n));
  return f;
}

ApproxFunction ApproxFunction::table(std::vector<Row> rows, std::string source) {
  require(!rows.empty(), "Table must have at least one row");
  std::sort(rows.begin(), rows.end(),
            [](const Row& x, const Row& y) { return x.first < y.first; });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].first >= 1, "Table entries need q >= 1");
    require(rows[i].second.sign() >= 0, "Table values must be >= 0");
    if (i > 0) {
      require(rows[i].first != rows[i - 1].first, "Table has a repeated q");
      require(compare(rows[i].second, rows[i - 1].second) <= 0, "Table must be non-increasing");
    }
  }
  ApproxFunction f;
  f.family_ = Family::Table;
  f.rows_ = std::move(rows);
  f.source_ = std::move(source);
  return f;
}

ApproxFunction ApproxFunction::load_table(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot open table file '" + path + "'");
  std::vector<Row> rows;
  std::string line;
  while (std::getline(in, line)) {
    for (char& c : line)
      if (c == ',' || c == '\t') c = ' ';
    std::istringstream ls(line);
    std::string qs, vs;
    if (!(ls >> qs) || qs[0] == '#') continue;
    require(static_cast<bool>(ls >> vs), "table line needs 'q value': " + line);
    Rational q = parse_rational(qs);
    require(den(q) == 1 && q >= 1, "table q must be a positive integer: " + qs);
    rows.emplace_back(to_u64(num(q)), parse_scalar(vs));
  }
  return table(std::move(rows), path);
}

ApproxFunction ApproxFunction::restricted(const ApproxFunction& base, std::vector<Scalar> alpha) {
  require(!alpha.empty(), "Restricted needs a non-empty alpha");
  ApproxFunction f;
  f.family_ = Family::Restricted;
  f.base_ = std::make_shared<const ApproxFunction>(base);
  f.alpha_ = std::move(alpha);
  return f;
}

bool ApproxFunction::power_form(Scalar& coef, Scalar& exponent) const {
  switch (family_) {
    case Family::Power:
      coef = Scalar(1);
      exponent = p0_;
      return true;
    case Family::ScaledPower:
      coef = p0_;
      exponent = p1_;
      return true;
    case Family::PsiK:
      coef = Scalar(1) / p0_;
      exponent = Scalar(1) / p1_;
      return true;
    default:
      return false;
  }
}

std::uint64_t ApproxFunction::table_min() const { return rows_.front().first; }
std::uint64_t ApproxFunction::table_max() const { return rows_.back().first; }

std::string ApproxFunction::str() const {
  switch (family_) {
    case Family::Power:
      return "power:" + p0_.str();
    case Family::ScaledPower:
      return "scaled:" + p0_.str() + "," + p1_.str();
    case Family::LogPower:
      return "logpow:" + p0_.str() + "," + p1_.str();
    case Family::PsiK:
      return "psik:" + p0_.str() + "," + p1_.str();
    case Family::Table:
      return source_.empty() ? "table:<" + std::to_string(rows_.size()) + " rows>"
                             : "table:" + source_;
    case Family::Restricted: {
      std::string s = "restricted:" + base_->str() + "@";
      for (std::size_t i = 0; i < alpha_.size(); ++i) s += (i ? ";" : "") + alpha_[i].str();
      return s;
    }
  }
  return "";
}

Scalar orbit_distance(const std::vector<Scalar>& alpha, std::uint64_t q) {
  Scalar best(0);
  Scalar qs{BigInt(q)};
  for (const Scalar& a : alpha) {
    Scalar d = nearest_integer_distance(qs * a);
    if (compare(d, best) > 0) best = d;
  }
  return best;
}

Scalar eval_psi(const ApproxFunction& psi, std::uint64_t q) {
  require(q >= 1, "psi is evaluated at q >= 1");
  Scalar qs{BigInt(q)};
  switch (psi.family()) {
    case ApproxFunction::Family::Power:
    case ApproxFunction::Family::ScaledPower:
    case ApproxFunction::Family::PsiK: {
      Scalar coef, expo;
      psi.power_form(coef, expo);
      Scalar v = pow_scalar(qs, -expo);
      return psi.family() == ApproxFunction::Family::Power ? v : coef * v;
    }
    case ApproxFunction::Family::LogPower: {
      Scalar qe(BigInt(std::max<std::uint64_t>(q, 3)));
      const Scalar& a = psi.log_a();
      const Scalar& b = psi.log_b();
      Scalar v = pow_scalar(qe, -b);
      if (a.is_exact() && a.sign() == 0) return v;
      return v * pow_scalar(log_scalar(qe), -(a * b));
    }
    case ApproxFunction::Family::Table: {
      const auto& rows = psi.rows();
      if (q < rows.front().first || q > rows.back().first)
        throw EmptyRange("q=" + std::to_string(q) + " outside the table domain");
      auto it = std::upper_bound(rows.begin(), rows.end(), q,
                                 [](std::uint64_t x, const ApproxFunction::Row& r) { return x < r.first; });
      return std::prev(it)->second;
    }
    case ApproxFunction::Family::Restricted: {
      Scalar v = eval_psi(psi.base(), q);
      return compare(orbit_distance(psi.alpha(), q), v) < 0 ? v : Scalar(0);
    }
  }
  return Scalar(0);
}

long double eval_psi_approx(const ApproxFunction& psi, std::uint64_t q) {
  long double x = static_cast<long double>(q);
  switch (psi.family()) {
    case ApproxFunction::Family::Power:
    case ApproxFunction::Family::ScaledPower:
    case ApproxFunction::Family::PsiK: {
      Scalar coef, expo;
      psi.power_form(coef, expo);
      return coef.to_long_double() * std::pow(x, -expo.to_long_double());
    }
    case ApproxFunction::Family::LogPower: {
      long double qe = std::max<long double>(x, 3.0L);
      long double a = psi.log_a().to_long_double(), b = psi.log_b().to_long_double();
      return std::pow(qe * std::pow(std::log(qe), a), -b);
    }
    default:
      return eval_psi(psi, q).to_long_double();
  }
}

std::function<long double(std::uint64_t)> psi_approx_fn(const ApproxFunction& psi) {
  Scalar coef, expo;
  if (psi.power_form(coef, expo)) {
    long double c = coef.to_long_double(), e = expo.to_long_double();
    return [c, e](std::uint64_t q) { return c * std::pow(static_cast<long double>(q), -e); };
  }
  if (psi.family() == ApproxFunction::Family::LogPower) {
    long double a = psi.log_a().to_long_double(), b = psi.log_b().to_long_double();
    return [a, b](std::uint64_t q) {
      long double qe = std::max<long double>(static_cast<long double>(q), 3.0L);
      return std::pow(qe * std::pow(std::log(qe), a), -b);
    };
  }
  return [psi](std::uint64_t q) { return eval_psi(psi, q).to_long_double(); };
}

ApproxFunction parse_approx(const std::string& text) {
  auto colon = text.find(':');
  require(colon != std::string::npos, "approximating function needs '<family>:<params>'");
  std::string fam = text.substr(0, colon), body = text.substr(colon + 1);
  if (fam == "restricted") {
    auto at = body.rfind('@');
    require(at != std::string::npos, "restricted spec is restricted:<base>@<alpha>");
    std::vector<Scalar> alpha;
    for (const auto& a : split_list(body.substr(at + 1), ';')) alpha.push_back(parse_scalar(a));
    return ApproxFunction::restricted(parse_approx(body.substr(0, at)), std::move(alpha));
  }
  if (fam == "table") return ApproxFunction::load_table(body);
  auto args = split_list(body, ',');
  auto need = [&](std::size_t k) {
    require(args.size() == k, fam + " takes " + std::to_string(k) + " parameter(s)");
  };
  if (fam == "power") {
    need(1);
    return ApproxFunction::power(parse_scalar(args[0]));
  }
  if (fam == "scaled") {
    need(2);
    return ApproxFunction::scaled_power(parse_scalar(args[0]), parse_scalar(args[1]));
  }
  if (fam == "logpow") {
    need(2);
    return ApproxFunction::log_power(parse_scalar(args[0]), parse_scalar(args[1]));
  }
  if (fam == "psik") {
    need(2);
    Rational k = parse_rational(args[0]), n = parse_rational(args[1]);
    require(den(k) == 1 && den(n) == 1 && k >= 1 && n >= 1, "psik parameters are positive integers");
    return ApproxFunction::psi_k(to_u64(num(k)), to_u64(num(n)));
  }
  throw InvalidArgument("unknown approximating function family '" + fam + "'");
}

}  // namespace dioph
