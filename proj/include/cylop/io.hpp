#pragma once

#include <string>

#include "cylop/homology.hpp"
#include "cylop/transport.hpp"
#include "json.hpp"

namespace cylop {

using Json = nlohmann::json;

Json scalar_to_json(const Scalar& q);
// Accepts "p/q" strings and integers.
Scalar scalar_from_json(const Json& j);

Json cooperad_to_json(const Cooperad& C);
Cooperad cooperad_from_json(const Json& j);
// A builtin name ("cocom:4") or a path to a cooperad JSON file.
Cooperad load_cooperad(const std::string& spec);
// The sub-presentation of arities <= cap.
Cooperad truncate_cooperad(const Cooperad& C, int cap);
Json read_json_file(const std::string& path);

Json tree_to_json(const Cooperad& C, const Tree& t);
// The raw (not yet canonical) tree described by the JSON.
Tree tree_from_json(const Cooperad& C, const Json& j);

Json element_to_json(const CylContext& ctx, const OperadElement& e);
OperadElement element_from_json(const CylContext& ctx, const Json& j);

Json gen_to_json(const Cooperad& C, const Gen& g);
Gen gen_from_json(const Cooperad& C, const Json& j);

Json derivation_to_json(const CylContext& ctx, const Derivation& D);
Derivation derivation_from_json(const CylContext& ctx, const Json& j);

Json space_to_json(const GradedSpace& V);
GradedSpace space_from_json(const Json& j);
Json matrix_to_json(const MultiMap& f);
MultiMap matrix_from_json(const EndTarget& T, const Gen& g, const Json& j);

Json structure_to_json(const CylContext& ctx, const AlgebraStructure& F);
AlgebraStructure structure_from_json(const CylContext& ctx, const Json& j);

Json report_to_json(const Report& r);
Json certificate_to_json(const CylContext& ctx, const TransportCertificate& c);
Json ranks_to_json(const ComplexSlice& c);

// A convolution element with values in Cyl(C) (target "free") or in the
// endomorphism operad of the given spaces (target "end").
struct ConvInput {
  Flavor flavor = Flavor::Cyl;
  bool end_target = false;
  int degree = 0;
  GradedSpace V, W;
  std::map<Gen, OperadElement> free_values;
  std::map<Gen, MultiMap> end_values;
};
ConvInput conv_from_json(const CylContext& ctx, const Json& j);
Json conv_to_json(const CylContext& ctx, const ConvInput& c);

}  // namespace cylop
