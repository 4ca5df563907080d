#include "qssamp/chain_io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>

namespace qssamp {

nlohmann::json chain_to_json(const MarkovChain& chain) {
  const int n = chain.size();
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < n; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < n; ++j) row.push_back(chain.transition()(i, j));
    rows.push_back(std::move(row));
  }
  nlohmann::json doc{{"n", n}, {"P", std::move(rows)}};
  if (!chain.labels().empty()) doc["labels"] = chain.labels();
  return doc;
}

MarkovChain chain_from_json(const nlohmann::json& doc, ErgodicityPolicy policy) {
  if (!doc.is_object()) throw ChainFormatError("chain document must be a JSON object");
  if (!doc.contains("n") || !doc["n"].is_number_integer()) {
    throw ChainFormatError("field 'n' is missing or not an integer");
  }
  const long n = doc["n"].get<long>();
  if (n < 1) throw ChainFormatError("field 'n' must be a positive integer");
  if (!doc.contains("P") || !doc["P"].is_array() ||
      doc["P"].size() != static_cast<std::size_t>(n)) {
    throw ChainFormatError("field 'P' is missing or is not an array of n rows");
  }

  Matrix P(n, n);
  for (long i = 0; i < n; ++i) {
    const auto& row = doc["P"][i];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(n)) {
      throw ChainFormatError("field 'P[" + std::to_string(i) +
                             "]' is not an array of n numbers");
    }
    for (long j = 0; j < n; ++j) {
      if (!row[j].is_number()) {
        throw ChainFormatError("field 'P[" + std::to_string(i) + "][" +
                               std::to_string(j) + "]' is not a number");
      }
      P(i, j) = row[j].get<double>();
    }
  }

  std::vector<std::string> labels;
  if (doc.contains("labels")) {
    if (!doc["labels"].is_array() || doc["labels"].size() != static_cast<std::size_t>(n)) {
      throw ChainFormatError("field 'labels' must be an array of n strings");
    }
    for (const auto& label : doc["labels"]) {
      if (!label.is_string()) throw ChainFormatError("field 'labels' must contain strings");
      labels.push_back(label.get<std::string>());
    }
  }
  return MarkovChain::validate(std::move(P), policy, /*renormalize_rows=*/false,
                               std::move(labels));
}

MarkovChain read_chain_file(const std::string& path, ErgodicityPolicy policy) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open chain file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw ChainFormatError("chain file '" + path + "' is not valid JSON: " + e.what());
  }
  return chain_from_json(doc, policy);
}

void write_chain_file(const std::string& path, const MarkovChain& chain) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write chain file '" + path + "'");
  out << chain_to_json(chain).dump(2) << "\n";
}

nlohmann::json hamiltonian_to_json(const HamiltonianModel& model) {
  const int n = model.size();
  nlohmann::json mu = nlohmann::json::array();
  for (int k = 0; k < n; ++k) mu.push_back(model.mu(k));
  nlohmann::json U = nlohmann::json::array();
  for (int i = 0; i < n; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int k = 0; k < n; ++k) row.push_back(model.U(i, k));
    U.push_back(std::move(row));
  }
  return nlohmann::json{{"mu", std::move(mu)}, {"U", std::move(U)}};
}

}  // namespace qssamp
