#pragma once

#include <string>

#include <json.hpp>

#include "cuntzk/characters.hpp"
#include "cuntzk/fock.hpp"
#include "cuntzk/group.hpp"
#include "cuntzk/k_engine.hpp"
#include "cuntzk/lattice.hpp"
#include "cuntzk/rep_ring.hpp"

namespace cuntzk::io {

using json = nlohmann::json;

/// Parses JSON text, mapping syntax errors to ParseError.
json parse(const std::string& text);
json read_file(const std::string& path);

/// Doubles are rounded to 12 decimals (and -0 printed as 0) so that reports
/// are byte-stable across runs.
double clean(double x);
json complex_to_json(Complex z);
Complex complex_from_json(const json& j);

// Group spec: {"family": "cyclic" | "dihedral" | "symmetric", "params": [n]},
// {"family": "direct_product", "params": [<group-spec>, <group-spec>]}, or
// {"table": [[...], ...], "labels": [...]}.
FamilySpec family_from_json(const json& j);
json family_to_json(const FamilySpec& f);
FiniteGroup group_from_json(const json& j);
json group_to_json(const FiniteGroup& g);
/// Order, family name and element labels; not a full table.
json group_summary(const FiniteGroup& g);

json classes_to_json(const FiniteGroup& g, const ConjugacyData& c);

json character_table_to_json(const CharacterTable& t);
/// Re-runs full validation. A "fingerprint" member, when present, must match.
CharacterTable character_table_from_json(const FiniteGroup& g, const json& j);

json irrep_matrices_to_json(const IrrepMatrices& m);
IrrepMatrices irrep_matrices_from_json(const CharacterTable& t, const json& j);

Integer integer_from_json(const json& j);
json integer_to_json(const Integer& x);
IntVector int_vector_from_json(const json& j);
json int_vector_to_json(const IntVector& v);
IntMatrix int_matrix_from_json(const json& j);
json int_matrix_to_json(const IntMatrix& m);

/// {"fingerprint": ..., "coeffs": [...]}. Import fails with TableMismatch
/// when the fingerprint differs from the ring's.
json rep_element_to_json(const RepRingElement& a);
RepRingElement rep_element_from_json(const RepRing& ring, const json& j);

/// {"<irrep label or index>": multiplicity, ...}
std::map<std::size_t, long long> multiset_from_json(const CharacterTable& t, const json& j);

struct ParsedAction {
  RepRing ring;
  QuasiFreeActionSpec spec;
};

/// Action spec: {"group": <group-spec>, "rep": {"<irrep>": multiplicity}}.
ParsedAction action_from_json(const json& j, BurnsideOptions options = {});

json fg_group_to_json(const FgAbelianGroup& g);
json k_groups_to_json(const KGroupsResult& k, const CharacterTable& t);
/// The (U, D, V) certificate with the defining matrix it certifies.
json smith_certificate(const IntMatrix& m, const SmithDecomposition& s);
json gr_decision_to_json(const GrDecision& d);
json kte_report_to_json(const KteReport& r, const CharacterTable& t);
json verification_to_json(const VerificationReport& r);

}  // namespace cuntzk::io
