#pragma once

// The named subgroups of S in the polynomial model, built once per table.

#include "g2fk/engine.hpp"
#include "g2fk/poly_model.hpp"

namespace g2fk {

struct SContext {
  const PolyTable& t;
  Subgroup S, Q, R, Z, Z2, Z3, Z4;

  explicit SContext(const PolyTable& table)
      : t(table),
        S(whole_group(table)),
        Q(closure(table, {table.x(2), table.x(3), table.x(4), table.x(5), table.x(6)})),
        R(closure(table, {table.x(1), table.x(3), table.x(4), table.x(5), table.x(6)})),
        Z(closure(table, {table.x(6)})),
        Z2(closure(table, {table.x(5), table.x(6)})),
        Z3(closure(table, {table.x(4), table.x(5), table.x(6)})),
        Z4(closure(table, {table.x(3), table.x(4), table.x(5), table.x(6)})) {}

  unsigned p() const { return t.prime(); }
  const PrimeField& field() const { return t.model().field(); }
};

inline std::size_t ipow(std::size_t b, unsigned e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace g2fk
