#include "specrig/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace specrig {

long total_degree(const Monomial& m) {
  long d = 0;
  for (int e : m) d += e;
  return d;
}

bool monomial_divides(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Monomial monomial_mul(const Monomial& a, const Monomial& b) {
  Monomial out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Monomial monomial_div(const Monomial& a, const Monomial& b) {
  Monomial out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Monomial monomial_lcm(const Monomial& a, const Monomial& b) {
  Monomial out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

int monomial_compare(const Monomial& a, const Monomial& b, MonomialOrder order) {
  if (order == MonomialOrder::Lex) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
  }
  long da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db ? -1 : 1;
  // graded reverse lexicographic: last nonzero difference decides, reversed
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  return 0;
}

PolyRing::PolyRing(std::vector<std::string> variables, MonomialOrder order)
    : vars_(std::move(variables)), order_(order) {
  if (vars_.empty()) throw DomainError("polynomial ring needs at least one variable");
}

std::optional<std::size_t> PolyRing::variable_index(const std::string& name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return i;
  return std::nullopt;
}

RingPtr make_ring(std::vector<std::string> variables, MonomialOrder order) {
  return std::make_shared<const PolyRing>(std::move(variables), order);
}

Polynomial Polynomial::constant(RingPtr ring, const Rational& c) {
  Polynomial p(ring);
  if (c != 0) p.terms_.push_back({Monomial(ring->nvars(), 0), c});
  return p;
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t index) {
  if (index >= ring->nvars()) throw DomainError("variable index out of range");
  Polynomial p(ring);
  Monomial m(ring->nvars(), 0);
  m[index] = 1;
  p.terms_.push_back({std::move(m), Rational(1)});
  return p;
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<Term> terms) {
  Polynomial p(std::move(ring));
  p.sort_and_combine(std::move(terms));
  return p;
}

void Polynomial::sort_and_combine(std::vector<Term>&& raw) {
  MonomialOrder order = ring_->order();
  std::sort(raw.begin(), raw.end(), [order](const Term& a, const Term& b) {
    return monomial_compare(a.mono, b.mono, order) > 0;
  });
  terms_.clear();
  for (auto& t : raw) {
    if (t.coeff == 0) continue;
    if (!terms_.empty() && terms_.back().mono == t.mono) {
      terms_.back().coeff += t.coeff;
      if (terms_.back().coeff == 0) terms_.pop_back();
    } else {
      terms_.push_back(std::move(t));
    }
  }
}

long Polynomial::degree() const {
  long d = -1;
  for (const Term& t : terms_) d = std::max(d, total_degree(t.mono));
  return d;
}

const Polynomial::Term& Polynomial::leading_term() const {
  if (terms_.empty()) throw DomainError("leading term of the zero polynomial");
  return terms_.front();
}

namespace {

void require_same_ring(const Polynomial& a, const Polynomial& b) {
  if (!a.ring() || !b.ring() || !(*a.ring() == *b.ring()))
    throw DomainError("polynomial ring mismatch");
}

}  // namespace

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
  require_same_ring(*this, rhs);
  std::vector<Term> raw = terms_;
  raw.insert(raw.end(), rhs.terms_.begin(), rhs.terms_.end());
  Polynomial out(ring_);
  out.sort_and_combine(std::move(raw));
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const { return *this + (-rhs); }

Polynomial Polynomial::operator-() const {
  Polynomial out(ring_);
  out.terms_ = terms_;
  for (Term& t : out.terms_) t.coeff = -t.coeff;
  return out;
}

Polynomial Polynomial::scaled(const Rational& c) const {
  if (c == 0) return Polynomial(ring_);
  Polynomial out(ring_);
  out.terms_ = terms_;
  for (Term& t : out.terms_) t.coeff *= c;
  return out;
}

Polynomial Polynomial::mul_term(const Monomial& m, const Rational& c) const {
  if (c == 0) return Polynomial(ring_);
  Polynomial out(ring_);
  out.terms_ = terms_;
  for (Term& t : out.terms_) {
    t.mono = monomial_mul(t.mono, m);
    t.coeff *= c;
  }
  return out;  // multiplying by a monomial preserves the order
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
  require_same_ring(*this, rhs);
  std::vector<Term> raw;
  raw.reserve(terms_.size() * rhs.terms_.size());
  for (const Term& a : terms_)
    for (const Term& b : rhs.terms_)
      raw.push_back({monomial_mul(a.mono, b.mono), a.coeff * b.coeff});
  Polynomial out(ring_);
  out.sort_and_combine(std::move(raw));
  return out;
}

Polynomial Polynomial::pow(long e) const {
  if (e < 0) throw DomainError("negative polynomial power");
  Polynomial result = Polynomial::constant(ring_, 1);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

bool Polynomial::operator==(const Polynomial& rhs) const {
  if (!ring_ || !rhs.ring_) return terms_.empty() && rhs.terms_.empty();
  if (!(*ring_ == *rhs.ring_)) return false;
  if (terms_.size() != rhs.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].mono != rhs.terms_[i].mono || terms_[i].coeff != rhs.terms_[i].coeff)
      return false;
  return true;
}

Polynomial Polynomial::normalized_integer() const {
  if (terms_.empty()) return *this;
  mpz_class den_lcm = 1;
  for (const Term& t : terms_)
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den().get_mpz_t());
  mpz_class content = 0;
  for (const Term& t : terms_) {
    mpz_class num = t.coeff.get_num() * (den_lcm / t.coeff.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), num.get_mpz_t());
  }
  if (content == 0) content = 1;
  Rational scale(den_lcm, content);
  if (terms_.front().coeff < 0) scale = -scale;
  return scaled(scale);
}

Polynomial Polynomial::monic() const {
  if (terms_.empty()) return *this;
  return scaled(1 / terms_.front().coeff);
}

Rational Polynomial::evaluate(const QVector& point) const {
  if (point.size() != ring_->nvars())
    throw DomainError("evaluation point length mismatch");
  Rational sum = 0;
  for (const Term& t : terms_) {
    Rational prod = t.coeff;
    for (std::size_t i = 0; i < point.size(); ++i) {
      for (int e = 0; e < t.mono[i]; ++e) prod *= point[i];
    }
    sum += prod;
  }
  return sum;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images) const {
  if (images.size() != ring_->nvars())
    throw DomainError("substitution image count mismatch");
  RingPtr target = images.empty() ? ring_ : images[0].ring();
  Polynomial sum = Polynomial::zero(target);
  for (const Term& t : terms_) {
    Polynomial prod = Polynomial::constant(target, t.coeff);
    for (std::size_t i = 0; i < images.size(); ++i)
      if (t.mono[i] > 0) prod = prod * images[i].pow(t.mono[i]);
    sum = sum + prod;
  }
  return sum;
}

Polynomial Polynomial::with_ring(const RingPtr& ring) const {
  if (ring->variables() != ring_->variables())
    throw DomainError("with_ring requires identical variables");
  std::vector<Term> raw = terms_;
  Polynomial out(ring);
  out.sort_and_combine(std::move(raw));
  return out;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const Term& t : terms_) {
    Rational c = t.coeff;
    if (first) {
      if (c < 0) {
        os << "-";
        c = -c;
      }
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    first = false;
    bool has_vars = total_degree(t.mono) > 0;
    if (c != 1 || !has_vars) os << c.get_str();
    bool need_star = c != 1 || !has_vars;
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      if (t.mono[i] == 0) continue;
      if (need_star) os << "*";
      need_star = true;
      os << ring_->variables()[i];
      if (t.mono[i] > 1) os << "^" << t.mono[i];
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Parser: expr := term (('+'|'-') term)*; term := factor ('*' factor)*;
// factor := atom ('^' uint)?; atom := var | literal | '(' expr ')' | '-' atom
// ---------------------------------------------------------------------------

namespace {

struct Parser {
  const RingPtr& ring;
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  [[noreturn]] void fail(const std::string& what) {
    throw DomainError("polynomial parse error at position " + std::to_string(pos) + ": " + what);
  }

  Polynomial parse_expr() {
    Polynomial acc = parse_term();
    while (true) {
      if (eat('+'))
        acc = acc + parse_term();
      else if (eat('-'))
        acc = acc - parse_term();
      else
        return acc;
    }
  }

  Polynomial parse_term() {
    Polynomial acc = parse_factor();
    while (eat('*')) acc = acc * parse_factor();
    return acc;
  }

  Polynomial parse_factor() {
    Polynomial base = parse_atom();
    if (eat('^')) {
      skip_ws();
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (start == pos) fail("expected integer exponent");
      long e = std::stol(text.substr(start, pos - start));
      return base.pow(e);
    }
    return base;
  }

  Polynomial parse_atom() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    char c = text[pos];
    if (c == '(') {
      ++pos;
      Polynomial inner = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (c == '-') {
      ++pos;
      return -parse_atom();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return parse_literal();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_variable();
    fail(std::string("unexpected character '") + c + "'");
  }

  Polynomial parse_literal() {
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    std::string num = text.substr(start, pos - start);
    skip_ws();
    if (pos < text.size() && text[pos] == '/') {
      // only a literal denominator, not division by a polynomial
      std::size_t save = pos;
      ++pos;
      skip_ws();
      std::size_t dstart = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (dstart == pos) {
        pos = save;
      } else {
        num += "/" + text.substr(dstart, pos - dstart);
      }
    }
    return Polynomial::constant(ring, parse_rational(num));
  }

  Polynomial parse_variable() {
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    std::string name = text.substr(start, pos - start);
    auto idx = ring->variable_index(name);
    if (!idx) fail("unknown variable '" + name + "'");
    return Polynomial::variable(ring, *idx);
  }
};

}  // namespace

Polynomial parse_polynomial(const RingPtr& ring, const std::string& text) {
  Parser p{ring, text};
  Polynomial result = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return result;
}

std::vector<Polynomial> parse_polynomial_lines(const RingPtr& ring, const std::string& text) {
  std::vector<Polynomial> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    bool blank = true;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (blank) continue;
    out.push_back(parse_polynomial(ring, line));
  }
  return out;
}

}  // namespace specrig
