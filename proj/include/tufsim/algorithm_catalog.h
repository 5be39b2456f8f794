#ifndef TUFSIM_ALGORITHM_CATALOG_H_
#define TUFSIM_ALGORITHM_CATALOG_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tufsim {

/// Parameter set of one signature scheme as seen by a verifying client.
/// `cost` is the verification effort of one signature in millions of cycles.
/// For stateful hash-based schemes `max_sigs` bounds how many signatures a
/// single key pair may produce before it has to be rolled over.
struct SignatureAlgorithm {
  std::string name;
  std::uint64_t sig_size = 0;
  std::uint64_t pk_size = 0;
  std::uint64_t max_sigs = 1;
  double cost = 0.0;

  friend bool operator==(const SignatureAlgorithm&, const SignatureAlgorithm&) = default;
};

using AlgorithmCatalog = std::vector<SignatureAlgorithm>;

inline constexpr std::string_view kColName = "Name";
inline constexpr std::string_view kColSignatureSize = "Signature Size";
inline constexpr std::string_view kColPublicKeySize = "Public Key Size";
inline constexpr std::string_view kColMaxSignatures = "Max Signatures";
inline constexpr std::string_view kColComputationalCost = "Computational Cost";

/// Throws ValidationError if `alg` breaks a field invariant.
void validate(const SignatureAlgorithm& alg);

/// Reads an algorithm table. Header cells are matched after trimming and may
/// appear in any order; extra columns are ignored. `Max Signatures` accepts
/// integers and decimal scientific notation (`1E4`, `2.5e3`), truncated
/// toward zero.
///
/// Throws ParseError on structural problems (missing column, bad number,
/// duplicate name) and ValidationError when a row breaks an invariant.
AlgorithmCatalog parse_algorithm_catalog(std::string_view csv_text);

/// Writes a catalog in the same format `parse_algorithm_catalog` reads.
/// Costs are printed with enough digits to round-trip exactly.
std::string serialize_algorithm_catalog(std::span<const SignatureAlgorithm> catalog);

/// First entry named exactly `name`; throws LookupError otherwise.
const SignatureAlgorithm& find_algorithm(std::string_view name,
                                         std::span<const SignatureAlgorithm> catalog);

}  // namespace tufsim

#endif  // TUFSIM_ALGORITHM_CATALOG_H_
