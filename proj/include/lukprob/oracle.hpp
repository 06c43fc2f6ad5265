// Independent brute-force references: small-model countermodel search, a
// classical K decision procedure, random query corpora and the differential
// harness comparing them with the tableau prover.
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lukprob/reductions.hpp"
#include "lukprob/tableau.hpp"

namespace lukprob {

struct SearchSpace {
  std::size_t max_worlds = 2;
  /// Atom weights range over {0, 1/D, ..., 1}.
  long grid = 4;
  std::uint64_t seed = 1;
  /// Models examined per query; exhaustive enumeration is used when the
  /// whole space fits, seeded sampling otherwise.
  std::size_t budget = 4000;
};

/// A canonical model whose world "v0" gives every premise value 1 and the
/// conclusion a value below 1, checked exactly. nullopt is not a proof.
std::optional<CanonicalModel> search_countermodel(const EntailmentQuery& q, const SearchSpace& s);

struct KResult {
  bool valid = false;
  /// Tree model falsifying the formula at world 0.
  std::optional<KModel> countermodel;
};

/// Standard tableau for multi-agent K.
KResult classical_k_decide(const ClassicalFormula& f);

struct CorpusSpec {
  std::size_t instances = 300;
  std::size_t max_depth = 2;
  std::size_t vars = 3;
  std::size_t agents = 2;
  long max_denominator = 4;
  /// Allow * and ~> (exactly one product connective per query when set).
  bool nonlinear = false;
  std::size_t max_premises = 1;
  std::uint64_t seed = 1;
};

std::vector<EntailmentQuery> random_corpus(const CorpusSpec& spec);

struct DifferentialReport {
  std::size_t instances = 0;
  std::size_t valid = 0;
  std::size_t not_valid = 0;
  std::size_t unknown = 0;
  std::size_t oracle_found = 0;
  /// Oracle countermodels the prover did not match with NOT_VALID.
  std::size_t missed = 0;
  std::vector<std::string> discrepancies;
  double prover_seconds = 0;
  double oracle_seconds = 0;

  std::string to_json() const;
};

/// Discrepancies: VALID despite an oracle countermodel, and any prover
/// countermodel that fails its exact re-check.
DifferentialReport differential_run(const std::vector<EntailmentQuery>& corpus, const DecideOptions& prover,
                                    const SearchSpace& space);

}  // namespace lukprob
