#pragma once

#include <cstdint>
#include <vector>

#include "snowsim/graph_state.hpp"

namespace snowsim::stab {

enum class Basis { Y, Z };

/// One stabilizer generator over up to 16 qubits, encoded in binary
/// symplectic form: the operator is i^phase * prod_q X^x_q Z^z_q with the X
/// factor to the left of the Z factor on each qubit. Hermitian rows have
/// phase + popcount(x & z) even.
struct PauliRow {
  uint32_t x = 0;
  uint32_t z = 0;
  uint8_t phase = 0;  // exponent of i, mod 4
};

/// Brute-force stabilizer tableau used as an independent check of the graph
/// rewrite rules. Row count always equals qubit count; measured qubits are
/// discarded so the tableau tracks exactly the surviving register.
class StabilizerTableau {
 public:
  static constexpr int kMaxQubits = 16;

  /// Generators X_i prod_{j in N(i)} Z_j, one per vertex, columns in
  /// ascending vertex-id order.
  static StabilizerTableau from_graph(const GraphState& g);

  /// Projects qubit `label` onto the +1 eigenspace of Y or Z, then discards
  /// it from the tableau. Only the +1 branch is tracked; the -1 branch
  /// differs by local Paulis that the canonical form absorbs.
  void measure_pauli(QubitId label, Basis basis);

  /// The unique graph (under this normal form: ascending-column Gaussian
  /// elimination, Hadamard only on X-rank-deficient columns, phase gates to
  /// clear the diagonal, signs absorbed) whose state is local-Clifford
  /// equivalent to the tableau. Vertex ids are the surviving labels.
  GraphState canonical_graph() const;

  int qubit_count() const { return static_cast<int>(labels_.size()); }
  const std::vector<QubitId>& labels() const { return labels_; }
  const std::vector<PauliRow>& rows() const { return rows_; }

  /// Validity checks used by the property tests.
  bool rows_commute() const;
  bool rows_independent() const;

 private:
  static uint8_t product_phase(const PauliRow& a, const PauliRow& b);
  static bool anticommutes(const PauliRow& a, const PauliRow& b);
  void multiply_into(PauliRow& dst, const PauliRow& src) const;
  int column_of(QubitId label) const;
  void discard_qubit(int col, size_t pivot_row);

  std::vector<PauliRow> rows_;
  std::vector<QubitId> labels_;  // ascending; labels_[c] is column c
};

}  // namespace snowsim::stab
