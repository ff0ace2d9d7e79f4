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

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "proofsched/error.hpp"

namespace proofsched {

enum class FormulaKind : std::uint8_t { Var, DualVar, Tensor, Par, ModPos, ModNeg };

/// Immutable MLL formula with action modalities, kept in negation normal
/// form: negation only ever appears on variables.
class Formula {
 public:
  static Formula var(std::string name);
  static Formula dual_var(std::string name);
  static Formula tensor(Formula left, Formula right);
  static Formula par(Formula left, Formula right);
  static Formula mod_pos(std::string channel, Formula body);
  static Formula mod_neg(std::string channel, Formula body);

  FormulaKind kind() const { return node_->kind; }
  /// Variable name for Var/DualVar, channel for modalities.
  const std::string& name() const { return node_->name; }
  const Formula& left() const { return node_->children[0]; }
  const Formula& right() const { return node_->children[1]; }
  const Formula& body() const { return node_->children[0]; }

  bool is_variable() const {
    return kind() == FormulaKind::Var || kind() == FormulaKind::DualVar;
  }
  bool is_binary() const {
    return kind() == FormulaKind::Tensor || kind() == FormulaKind::Par;
  }
  bool is_modality() const {
    return kind() == FormulaKind::ModPos || kind() == FormulaKind::ModNeg;
  }

  /// Number of connectives and variable occurrences.
  std::size_t size() const { return node_->size; }

  std::string to_string() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  struct Node {
    FormulaKind kind;
    std::string name;
    std::vector<Formula> children;
    std::size_t size;
  };
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

Formula negate(const Formula& a);

/// A -o B, i.e. negate(A) @ B.
Formula lollipop(const Formula& a, const Formula& b);

Formula parse_formula(std::string_view text);

/// Names of all variables occurring in the formula.
std::set<std::string> variables(const Formula& a);
void collect_variables(const Formula& a, std::set<std::string>& out);

using VarSet = std::set<std::string>;

/// Finite map from variable names to formulas.  Bindings may refer to other
/// bound variables while a unification is in progress; `apply` resolves them
/// fully and `normalized` returns the idempotent form.
class Substitution {
 public:
  Substitution() = default;

  bool contains(const std::string& name) const {
    return bindings_.count(name) != 0;
  }
  const Formula* find(const std::string& name) const;
  void bind(const std::string& name, Formula value);
  void unbind(const std::string& name) { bindings_.erase(name); }

  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }
  const std::map<std::string, Formula>& bindings() const { return bindings_; }

  /// Applies bindings repeatedly, as for a triangular unifier.
  Formula apply(const Formula& a) const;
  /// Replaces each variable once by its binding, without re-applying.
  Formula apply_simultaneous(const Formula& a) const;
  Substitution normalized() const;

  friend bool operator==(const Substitution& a, const Substitution& b) {
    return a.bindings_ == b.bindings_;
  }

 private:
  std::map<std::string, Formula> bindings_;
};

/// Replaces Var(x) by sigma(x) and DualVar(x) by negate(sigma(x)).
Formula substitute(const Formula& a, const Substitution& sigma);

/// Resolves only the head of `a` under `sigma` (following bound variables).
Formula resolve_head(const Formula& a, const Substitution& sigma);

/// In-place unification used by proof search.  Extends `sigma` so that
/// `a` and negate(`b`) become equal, binding only names in `open`; new
/// bindings are appended to `trail` so the caller can undo them.  Returns
/// false on clash or occurs-check failure, leaving `sigma` partially
/// extended (undo via the trail).
bool unify_dual_in_place(const Formula& a, const Formula& b, Substitution& sigma,
                         const VarSet& open, std::vector<std::string>& trail,
                         ErrorKind* failure = nullptr);

/// Most general extension of `sigma` under which `a` is the negation of `b`.
/// Throws Error(Clash) or Error(OccursCheck).
Substitution unify_dual(const Formula& a, const Formula& b, const Substitution& sigma,
                        const VarSet& open);

}  // namespace proofsched
