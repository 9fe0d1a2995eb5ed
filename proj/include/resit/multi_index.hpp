#pragma once

#include <vector>

#include "resit/errors.hpp"

namespace resit {

// A multi-index (iota_0, ..., iota_q). The admissible ones for the closed
// index formula have weight and degree both equal to q, which identifies
// (iota_1, ..., iota_q) with the multiplicity vector of an integer partition
// of q and forces iota_0 = q - (number of parts).
struct MultiIndex {
  std::vector<long> iota;  // indices 0..q

  long weight() const {
    long s = 0;
    for (long x : iota) s += x;
    return s;
  }

  long degree() const {
    long s = 0;
    for (std::size_t j = 0; j < iota.size(); ++j) s += static_cast<long>(j) * iota[j];
    return s;
  }
};

// All admissible multi-indices for a given q, one per integer partition of q.
inline std::vector<MultiIndex> enumerate_multi_indices(long q) {
  if (q < 1) fail(Err::BadParameters, "need q >= 1");
  std::vector<MultiIndex> out;
  std::vector<long> mult(static_cast<std::size_t>(q) + 1, 0);  // mult[j] = #parts equal to j
  long parts = 0;
  // descend over partitions of n with largest part <= k
  auto rec = [&](auto&& self, long n, long k) -> void {
    if (n == 0) {
      MultiIndex mi;
      mi.iota = mult;
      mi.iota[0] = q - parts;
      out.push_back(std::move(mi));
      return;
    }
    for (long j = std::min(n, k); j >= 1; --j) {
      ++mult[static_cast<std::size_t>(j)];
      ++parts;
      self(self, n - j, j);
      --mult[static_cast<std::size_t>(j)];
      --parts;
    }
  };
  rec(rec, q, q);
  return out;
}

}  // namespace resit
