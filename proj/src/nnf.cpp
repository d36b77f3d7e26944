#include "clarith/nnf.hpp"

namespace clarith {

namespace {

Formula::Kind dual(Formula::Kind k) {
  using K = Formula::Kind;
  switch (k) {
    case K::And: return K::Or;
    case K::Or: return K::And;
    case K::ChAnd: return K::ChOr;
    case K::ChOr: return K::ChAnd;
    case K::BlindAll: return K::BlindExists;
    case K::BlindExists: return K::BlindAll;
    case K::ChAll: return K::ChExists;
    case K::ChExists: return K::ChAll;
    default: return k;
  }
}

Formula nnf(const Formula& f, bool negated) {
  using K = Formula::Kind;
  if (f.is_atom()) return negated ? Formula::negation(f) : f;
  switch (f.kind()) {
    case K::Not: return nnf(f.operand(), !negated);
    case K::Implies:
      // A -> B is ~A \/ B; its negation is A /\ ~B.
      return negated ? Formula::conj(nnf(f.lhs(), false), nnf(f.rhs(), true))
                     : Formula::disj(nnf(f.lhs(), true), nnf(f.rhs(), false));
    default: break;
  }
  K k = negated ? dual(f.kind()) : f.kind();
  if (f.is_binary()) return Formula::binary(k, nnf(f.lhs(), negated), nnf(f.rhs(), negated));
  return Formula::quantifier(k, f.var(), nnf(f.body(), negated));
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf(f, false); }

bool is_nnf(const Formula& f) {
  if (f.is_atom()) return true;
  switch (f.kind()) {
    case Formula::Kind::Not: return f.operand().is_atom();
    case Formula::Kind::Implies: return false;
    default: break;
  }
  if (f.is_binary()) return is_nnf(f.lhs()) && is_nnf(f.rhs());
  return is_nnf(f.body());
}

}  // namespace clarith
