#include "snowsim/stabilizer.hpp"

#include <algorithm>
#include <bit>

namespace snowsim::stab {

namespace {
inline int parity(uint32_t v) { return std::popcount(v) & 1; }
}  // namespace

StabilizerTableau StabilizerTableau::from_graph(const GraphState& g) {
  if (g.vertex_count() == 0)
    throw SimError(ErrorCode::EmptyInput, "empty input");
  if (g.vertex_count() > kMaxQubits)
    throw SimError(ErrorCode::InvalidArgument, "tableau capacity exceeded");
  StabilizerTableau t;
  t.labels_ = g.vertices();
  const int n = t.qubit_count();
  t.rows_.resize(n);
  for (int i = 0; i < n; ++i) {
    PauliRow& r = t.rows_[i];
    r.x = 1u << i;
    for (QubitId u : g.neighbors(t.labels_[i])) {
      int c = t.column_of(u);
      r.z |= 1u << c;
    }
  }
  return t;
}

uint8_t StabilizerTableau::product_phase(const PauliRow& a, const PauliRow& b) {
  // (i^ka X^xa Z^za)(i^kb X^xb Z^zb): moving Z^za across X^xb contributes
  // (-1)^|za & xb|.
  return static_cast<uint8_t>((a.phase + b.phase + 2 * parity(a.z & b.x)) & 3);
}

bool StabilizerTableau::anticommutes(const PauliRow& a, const PauliRow& b) {
  return (parity(a.x & b.z) ^ parity(a.z & b.x)) != 0;
}

void StabilizerTableau::multiply_into(PauliRow& dst, const PauliRow& src) const {
  dst.phase = product_phase(dst, src);
  dst.x ^= src.x;
  dst.z ^= src.z;
}

int StabilizerTableau::column_of(QubitId label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label)
    throw SimError(ErrorCode::NoSuchQubit, "no such qubit");
  return static_cast<int>(it - labels_.begin());
}

void StabilizerTableau::measure_pauli(QubitId label, Basis basis) {
  const int col = column_of(label);
  const uint32_t bit = 1u << col;
  PauliRow p;
  if (basis == Basis::Z) {
    p.z = bit;
  } else {
    p.x = bit;
    p.z = bit;
    p.phase = 1;  // Y = i X Z
  }

  size_t pivot = rows_.size();
  for (size_t i = 0; i < rows_.size(); ++i) {
    if (anticommutes(rows_[i], p)) {
      pivot = i;
      break;
    }
  }

  if (pivot < rows_.size()) {
    // Random outcome: fold the pivot into the other anticommuting rows, then
    // post-select +1 by installing +P in its place.
    for (size_t i = pivot + 1; i < rows_.size(); ++i)
      if (anticommutes(rows_[i], p)) multiply_into(rows_[i], rows_[pivot]);
    rows_[pivot] = p;
  } else {
    // Deterministic outcome: +-P is already in the group. Find which subset
    // of generators multiplies to it (GF(2) basis over packed x|z vectors),
    // then verify the subset product carries phase +1.
    auto pack = [](const PauliRow& r) {
      return (static_cast<uint64_t>(r.x) << 32) | r.z;
    };
    auto top_bit = [](uint64_t v) { return 63 - std::countl_zero(v); };
    uint64_t basis[64] = {};
    uint32_t member[64] = {};
    for (size_t i = 0; i < rows_.size(); ++i) {
      uint64_t v = pack(rows_[i]);
      uint32_t m = 1u << i;
      while (v != 0) {
        const int b = top_bit(v);
        if (basis[b] == 0) {
          basis[b] = v;
          member[b] = m;
          break;
        }
        v ^= basis[b];
        m ^= member[b];
      }
    }
    uint64_t t = pack(p);
    uint32_t combo = 0;
    while (t != 0) {
      const int b = top_bit(t);
      if (basis[b] == 0) break;
      t ^= basis[b];
      combo ^= member[b];
    }
    if (t != 0 || combo == 0)
      throw SimError(ErrorCode::Internal, "measurement operator outside group");
    // Generators commute pairwise, so the subset product has a well defined
    // phase independent of multiplication order.
    size_t first = rows_.size();
    PauliRow acc;
    for (size_t i = 0; i < rows_.size(); ++i) {
      if (combo & (1u << i)) {
        if (first == rows_.size()) {
          first = i;
          acc = rows_[i];
        } else {
          multiply_into(acc, rows_[i]);
        }
      }
    }
    if (acc.x != p.x || acc.z != p.z)
      throw SimError(ErrorCode::Internal, "measurement operator outside group");
    if (acc.phase != p.phase)
      throw SimError(ErrorCode::Internal, "deterministic -1 outcome cannot be forced to +1");
    rows_[first] = p;
    pivot = first;
  }

  discard_qubit(col, pivot);
}

void StabilizerTableau::discard_qubit(int col, size_t pivot_row) {
  const uint32_t bit = 1u << col;
  const PauliRow pivot = rows_[pivot_row];
  // After the update every row commutes with the single-qubit pivot, so its
  // letter at col is either identity or the pivot letter itself; one fold
  // clears it.
  for (size_t i = 0; i < rows_.size(); ++i) {
    if (i == pivot_row) continue;
    if ((rows_[i].x | rows_[i].z) & bit) multiply_into(rows_[i], pivot);
    if ((rows_[i].x | rows_[i].z) & bit)
      throw SimError(ErrorCode::Internal, "discard left residual support");
  }
  rows_.erase(rows_.begin() + static_cast<ptrdiff_t>(pivot_row));
  const uint32_t low = bit - 1;
  for (PauliRow& r : rows_) {
    r.x = (r.x & low) | ((r.x >> 1) & ~low);
    r.z = (r.z & low) | ((r.z >> 1) & ~low);
  }
  labels_.erase(labels_.begin() + col);
}

GraphState StabilizerTableau::canonical_graph() const {
  const int n = qubit_count();
  std::vector<PauliRow> w = rows_;
  // Stage 1: ascending-column elimination to make the X block the identity;
  // a Hadamard (x/z swap on one column) is spent only when a column has no X
  // pivot left. Phases are ignored throughout: sign byproducts are local
  // Paulis and do not move edges.
  int r = 0;
  for (int j = 0; j < n; ++j) {
    const uint32_t bit = 1u << j;
    auto find_pivot = [&]() {
      for (size_t i = static_cast<size_t>(r); i < w.size(); ++i)
        if (w[i].x & bit) return static_cast<int>(i);
      return -1;
    };
    int piv = find_pivot();
    if (piv < 0) {
      for (PauliRow& row : w) {
        uint32_t xb = row.x & bit, zb = row.z & bit;
        row.x = (row.x & ~bit) | zb;
        row.z = (row.z & ~bit) | xb;
      }
      piv = find_pivot();
      if (piv < 0)
        throw SimError(ErrorCode::Internal, "tableau is not a stabilizer state");
    }
    std::swap(w[static_cast<size_t>(r)], w[static_cast<size_t>(piv)]);
    for (size_t i = 0; i < w.size(); ++i) {
      if (static_cast<int>(i) != r && (w[i].x & bit)) {
        w[i].x ^= w[static_cast<size_t>(r)].x;
        w[i].z ^= w[static_cast<size_t>(r)].z;
      }
    }
    ++r;
  }
  // Stage 2: clear the Z diagonal with phase gates (z ^= x on one column
  // touches only the pivot row there).
  for (int i = 0; i < n; ++i) {
    const uint32_t bit = 1u << i;
    if (w[static_cast<size_t>(i)].z & bit)
      for (PauliRow& row : w) row.z ^= row.x & bit;
  }
  // The Z block is now the adjacency matrix.
  for (int i = 0; i < n; ++i) {
    if (w[static_cast<size_t>(i)].x != (1u << i))
      throw SimError(ErrorCode::Internal, "normal form failed to reach identity X block");
    for (int j = 0; j < n; ++j) {
      bool ij = (w[static_cast<size_t>(i)].z >> j) & 1;
      bool ji = (w[static_cast<size_t>(j)].z >> i) & 1;
      if (ij != ji)
        throw SimError(ErrorCode::Internal, "normal form produced an asymmetric adjacency");
    }
  }
  GraphState g;
  for (QubitId v : labels_) g.add_vertex_with_id(v, 0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if ((w[static_cast<size_t>(i)].z >> j) & 1)
        g.add_edge(labels_[static_cast<size_t>(i)], labels_[static_cast<size_t>(j)], 0);
  return g;
}

bool StabilizerTableau::rows_commute() const {
  for (size_t i = 0; i < rows_.size(); ++i)
    for (size_t j = i + 1; j < rows_.size(); ++j)
      if (anticommutes(rows_[i], rows_[j])) return false;
  return true;
}

bool StabilizerTableau::rows_independent() const {
  uint64_t basis[64] = {};
  for (const PauliRow& r : rows_) {
    uint64_t v = (static_cast<uint64_t>(r.x) << 32) | r.z;
    while (v != 0) {
      const int b = 63 - std::countl_zero(v);
      if (basis[b] == 0) {
        basis[b] = v;
        break;
      }
      v ^= basis[b];
    }
    if (v == 0) return false;
  }
  return true;
}

}  // namespace snowsim::stab
