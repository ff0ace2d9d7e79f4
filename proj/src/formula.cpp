// Copyright 2026 The proofsched Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "proofsched/formula.hpp"

#include <cctype>
#include <utility>

namespace proofsched {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "parse-error";
    case ErrorKind::UnknownLocation: return "unknown-location";
    case ErrorKind::DuplicateLocation: return "duplicate-location";
    case ErrorKind::NotEnabled: return "not-enabled";
    case ErrorKind::InvalidPairing: return "invalid-pairing";
    case ErrorKind::MismatchedInitial: return "mismatched-initial";
    case ErrorKind::MalformedStructure: return "malformed-structure";
    case ErrorKind::NotACut: return "not-a-cut";
    case ErrorKind::Clash: return "clash";
    case ErrorKind::OccursCheck: return "occurs-check";
    case ErrorKind::CapExceeded: return "cap-exceeded";
    case ErrorKind::Incompatible: return "incompatible";
    case ErrorKind::NotCongruent: return "not-congruent";
    case ErrorKind::TypeMismatch: return "type-mismatch";
    case ErrorKind::NotConsistent: return "not-consistent";
    case ErrorKind::NotMaximal: return "not-maximal";
    case ErrorKind::NotExecutable: return "not-executable";
    case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

Formula Formula::var(std::string name) {
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::Var, std::move(name), {}, 1}));
}

Formula Formula::dual_var(std::string name) {
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::DualVar, std::move(name), {}, 1}));
}

Formula Formula::tensor(Formula left, Formula right) {
  std::size_t size = 1 + left.size() + right.size();
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::Tensor, {}, {std::move(left), std::move(right)}, size}));
}

Formula Formula::par(Formula left, Formula right) {
  std::size_t size = 1 + left.size() + right.size();
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::Par, {}, {std::move(left), std::move(right)}, size}));
}

Formula Formula::mod_pos(std::string channel, Formula body) {
  std::size_t size = 1 + body.size();
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::ModPos, std::move(channel), {std::move(body)}, size}));
}

Formula Formula::mod_neg(std::string channel, Formula body) {
  std::size_t size = 1 + body.size();
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::ModNeg, std::move(channel), {std::move(body)}, size}));
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.size() != b.size() || a.name() != b.name()) {
    return false;
  }
  for (std::size_t i = 0; i < a.node_->children.size(); ++i) {
    if (!(a.node_->children[i] == b.node_->children[i])) return false;
  }
  return true;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (auto c = a.name() <=> b.name(); c != 0) return c;
  for (std::size_t i = 0; i < a.node_->children.size(); ++i) {
    if (auto c = a.node_->children[i] <=> b.node_->children[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

namespace {

void print(const Formula& a, std::string& out);

void print_operand(const Formula& a, std::string& out) {
  if (a.is_binary() || (a.is_modality() && a.body().is_binary())) {
    out += '(';
    print(a, out);
    out += ')';
  } else {
    print(a, out);
  }
}

void print(const Formula& a, std::string& out) {
  switch (a.kind()) {
    case FormulaKind::Var:
      out += a.name();
      break;
    case FormulaKind::DualVar:
      out += a.name();
      out += '^';
      break;
    case FormulaKind::Tensor:
    case FormulaKind::Par:
      print_operand(a.left(), out);
      out += a.kind() == FormulaKind::Tensor ? " * " : " @ ";
      print_operand(a.right(), out);
      break;
    case FormulaKind::ModPos:
    case FormulaKind::ModNeg:
      out += '<';
      out += a.name();
      out += a.kind() == FormulaKind::ModPos ? ">+ " : ">- ";
      if (a.body().is_binary()) {
        out += '(';
        print(a.body(), out);
        out += ')';
      } else {
        print(a.body(), out);
      }
      break;
  }
}

}  // namespace

std::string Formula::to_string() const {
  std::string out;
  print(*this, out);
  return out;
}

Formula negate(const Formula& a) {
  switch (a.kind()) {
    case FormulaKind::Var: return Formula::dual_var(a.name());
    case FormulaKind::DualVar: return Formula::var(a.name());
    case FormulaKind::Tensor: return Formula::par(negate(a.left()), negate(a.right()));
    case FormulaKind::Par: return Formula::tensor(negate(a.left()), negate(a.right()));
    case FormulaKind::ModPos: return Formula::mod_neg(a.name(), negate(a.body()));
    case FormulaKind::ModNeg: return Formula::mod_pos(a.name(), negate(a.body()));
  }
  throw Error(ErrorKind::Internal, "negate: bad formula kind");
}

Formula lollipop(const Formula& a, const Formula& b) {
  return Formula::par(negate(a), b);
}

void collect_variables(const Formula& a, std::set<std::string>& out) {
  if (a.is_variable()) {
    out.insert(a.name());
    return;
  }
  if (a.is_binary()) {
    collect_variables(a.left(), out);
    collect_variables(a.right(), out);
  } else {
    collect_variables(a.body(), out);
  }
}

std::set<std::string> variables(const Formula& a) {
  std::set<std::string> out;
  collect_variables(a, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text) : text_(text) {}

  Formula parse() {
    Formula f = implication();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return f;
  }

 private:
  Formula implication() {
    Formula lhs = par_chain();
    skip_space();
    if (text_.substr(pos_, 2) == "-o") {
      advance(2);
      Formula rhs = implication();
      return lollipop(lhs, rhs);
    }
    return lhs;
  }

  Formula par_chain() {
    Formula acc = tensor_chain();
    while (peek() == '@') {
      advance(1);
      acc = Formula::par(acc, tensor_chain());
    }
    return acc;
  }

  Formula tensor_chain() {
    Formula acc = unary();
    while (peek() == '*') {
      advance(1);
      acc = Formula::tensor(acc, unary());
    }
    return acc;
  }

  Formula unary() {
    if (peek() == '<') {
      advance(1);
      std::string channel = identifier();
      expect('>');
      char sign = text_.size() > pos_ ? text_[pos_] : '\0';
      if (sign != '+' && sign != '-') fail("expected '+' or '-' after modality");
      advance(1);
      Formula body = unary();
      return sign == '+' ? Formula::mod_pos(channel, body)
                         : Formula::mod_neg(channel, body);
    }
    return atom();
  }

  Formula atom() {
    Formula f = [&] {
      if (peek() == '(') {
        advance(1);
        Formula inner = implication();
        expect(')');
        return inner;
      }
      return Formula::var(identifier());
    }();
    while (pos_ < text_.size() && text_[pos_] == '^') {
      advance(1);
      f = negate(f);
    }
    return f;
  }

  std::string identifier() {
    skip_space();
    std::size_t start = pos_;
    if (pos_ >= text_.size() || !std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      fail("expected a variable name");
    }
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      advance(1);
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    advance(1);
  }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i) {
      if (text_[pos_] == '\n') {
        ++line_;
        column_ = 1;
      } else {
        ++column_;
      }
      ++pos_;
    }
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      advance(1);
    }
  }

  [[noreturn]] void fail(const std::string& message) {
    throw ParseError(line_, column_, message);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

}  // namespace

Formula parse_formula(std::string_view text) { return FormulaParser(text).parse(); }

// ---------------------------------------------------------------------------
// Substitution and unification

const Formula* Substitution::find(const std::string& name) const {
  auto it = bindings_.find(name);
  return it == bindings_.end() ? nullptr : &it->second;
}

void Substitution::bind(const std::string& name, Formula value) {
  bindings_.insert_or_assign(name, std::move(value));
}

Formula Substitution::apply(const Formula& a) const {
  if (bindings_.empty()) return a;
  switch (a.kind()) {
    case FormulaKind::Var:
      if (const Formula* v = find(a.name())) return apply(*v);
      return a;
    case FormulaKind::DualVar:
      if (const Formula* v = find(a.name())) return negate(apply(*v));
      return a;
    case FormulaKind::Tensor:
      return Formula::tensor(apply(a.left()), apply(a.right()));
    case FormulaKind::Par:
      return Formula::par(apply(a.left()), apply(a.right()));
    case FormulaKind::ModPos:
      return Formula::mod_pos(a.name(), apply(a.body()));
    case FormulaKind::ModNeg:
      return Formula::mod_neg(a.name(), apply(a.body()));
  }
  return a;
}

Formula Substitution::apply_simultaneous(const Formula& a) const {
  switch (a.kind()) {
    case FormulaKind::Var:
      if (const Formula* v = find(a.name())) return *v;
      return a;
    case FormulaKind::DualVar:
      if (const Formula* v = find(a.name())) return negate(*v);
      return a;
    case FormulaKind::Tensor:
      return Formula::tensor(apply_simultaneous(a.left()), apply_simultaneous(a.right()));
    case FormulaKind::Par:
      return Formula::par(apply_simultaneous(a.left()), apply_simultaneous(a.right()));
    case FormulaKind::ModPos:
      return Formula::mod_pos(a.name(), apply_simultaneous(a.body()));
    case FormulaKind::ModNeg:
      return Formula::mod_neg(a.name(), apply_simultaneous(a.body()));
  }
  return a;
}

Substitution Substitution::normalized() const {
  Substitution out;
  for (const auto& [name, value] : bindings_) out.bind(name, apply(value));
  return out;
}

Formula substitute(const Formula& a, const Substitution& sigma) { return sigma.apply(a); }

Formula resolve_head(const Formula& a, const Substitution& sigma) {
  Formula cur = a;
  while (cur.is_variable()) {
    const Formula* v = sigma.find(cur.name());
    if (v == nullptr) break;
    cur = cur.kind() == FormulaKind::Var ? *v : negate(*v);
  }
  return cur;
}

namespace {

bool occurs(const std::string& name, const Formula& a, const Substitution& sigma) {
  if (a.is_variable()) {
    if (a.name() == name) return true;
    const Formula* v = sigma.find(a.name());
    return v != nullptr && occurs(name, *v, sigma);
  }
  if (a.is_binary()) {
    return occurs(name, a.left(), sigma) || occurs(name, a.right(), sigma);
  }
  return occurs(name, a.body(), sigma);
}

bool is_open_unbound(const Formula& a, const Substitution& sigma, const VarSet& open) {
  return a.is_variable() && open.count(a.name()) != 0 && !sigma.contains(a.name());
}

bool unify(const Formula& s0, const Formula& t0, Substitution& sigma, const VarSet& open,
           std::vector<std::string>& trail, ErrorKind& failure) {
  Formula s = resolve_head(s0, sigma);
  Formula t = resolve_head(t0, sigma);
  if (!is_open_unbound(s, sigma, open) && is_open_unbound(t, sigma, open)) {
    std::swap(s, t);
  }
  if (is_open_unbound(s, sigma, open)) {
    if (t.is_variable() && t.name() == s.name()) {
      if (t.kind() == s.kind()) return true;
      failure = ErrorKind::OccursCheck;
      return false;
    }
    if (occurs(s.name(), t, sigma)) {
      failure = ErrorKind::OccursCheck;
      return false;
    }
    sigma.bind(s.name(), s.kind() == FormulaKind::Var ? t : negate(t));
    trail.push_back(s.name());
    return true;
  }
  if (s.kind() != t.kind() || s.name() != t.name()) {
    failure = ErrorKind::Clash;
    return false;
  }
  if (s.is_variable()) return true;
  if (s.is_binary()) {
    return unify(s.left(), t.left(), sigma, open, trail, failure) &&
           unify(s.right(), t.right(), sigma, open, trail, failure);
  }
  return unify(s.body(), t.body(), sigma, open, trail, failure);
}

}  // namespace

bool unify_dual_in_place(const Formula& a, const Formula& b, Substitution& sigma,
                         const VarSet& open, std::vector<std::string>& trail,
                         ErrorKind* failure) {
  ErrorKind kind = ErrorKind::Clash;
  bool ok = unify(a, negate(b), sigma, open, trail, kind);
  if (!ok && failure != nullptr) *failure = kind;
  return ok;
}

Substitution unify_dual(const Formula& a, const Formula& b, const Substitution& sigma,
                        const VarSet& open) {
  Substitution work = sigma;
  std::vector<std::string> trail;
  ErrorKind failure = ErrorKind::Clash;
  if (!unify_dual_in_place(a, b, work, open, trail, &failure)) {
    throw Error(failure, std::string(failure == ErrorKind::OccursCheck
                                         ? "occurs check failed unifying "
                                         : "cannot unify ") +
                             a.to_string() + " with the dual of " + b.to_string());
  }
  return work.normalized();
}

}  // namespace proofsched
