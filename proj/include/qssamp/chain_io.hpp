#pragma once

#include <iosfwd>
#include <nlohmann/json_fwd.hpp>
#include <string>

#include "qssamp/hamiltonian.hpp"
#include "qssamp/markov.hpp"

namespace qssamp {

/// Chain JSON format: {"n": <int>, "P": [[row-major floats]], "labels": [...]}.
/// Values round-trip bit-exactly through the shortest-round-trip decimal
/// serialization used by the JSON layer.
nlohmann::json chain_to_json(const MarkovChain& chain);

/// Parses and validates; ChainFormatError messages name the failing field.
MarkovChain chain_from_json(const nlohmann::json& doc,
                            ErgodicityPolicy policy = ErgodicityPolicy::kRequire);

MarkovChain read_chain_file(const std::string& path,
                            ErgodicityPolicy policy = ErgodicityPolicy::kRequire);
void write_chain_file(const std::string& path, const MarkovChain& chain);

/// Debug dump {"mu": [...], "U": [[...]]}; not a stability-guaranteed format.
nlohmann::json hamiltonian_to_json(const HamiltonianModel& model);

}  // namespace qssamp
