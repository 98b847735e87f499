#pragma once

// Glue between library types and the oracle's plain tuples.

#include <string>
#include <vector>

#include <doctest.h>

#include "oracles.hpp"
#include "wem/blockmodel.hpp"
#include "wem/codecraft.hpp"

namespace support {

inline oracle::Model to_oracle(const wem::MemoryModel& m) {
  return {m.loa, m.uoe, m.scm == wem::Scm::none ? 0 : (m.scm == wem::Scm::overwrite ? 1 : 2)};
}

inline wem::BlockState to_state(const oracle::Tuple& t) { return wem::BlockState{t}; }

/// Codeword texts of a state under a code; empty when the code lacks it.
inline std::vector<std::string> words_of(const wem::Code& code, const oracle::Tuple& t) {
  std::vector<std::string> out;
  if (const auto* words = code.encode(to_state(t))) {
    for (const wem::BitString& w : *words) out.push_back(w.to_string());
  }
  return out;
}

inline oracle::Costs oracle_costs(const wem::Code& code) {
  const auto model = to_oracle(code.model());
  const auto states = oracle::slot_states(code.shape().n, code.shape().k, model);
  return oracle::transition_costs(states, code.shape().n, model,
                                  [&](const oracle::Tuple& t) { return words_of(code, t); });
}

}  // namespace support

namespace doctest {
template <>
struct StringMaker<wem::Count> {
  static String convert(wem::Count value) { return wem::to_string(value).c_str(); }
};
}  // namespace doctest
