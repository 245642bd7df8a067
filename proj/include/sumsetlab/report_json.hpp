#pragma once

#include <json.hpp>

#include "sumsetlab/factor_system.hpp"
#include "sumsetlab/group.hpp"
#include "sumsetlab/proof_replay.hpp"
#include "sumsetlab/structure.hpp"
#include "sumsetlab/sumset.hpp"

namespace sumsetlab {

// Field order is fixed by insertion, so equal reports serialize to equal bytes.
using Json = nlohmann::ordered_json;

Json to_json(const SubsetMask& m);  // sorted element indices
Json to_json(const TorsionValue& t);  // integer, or the string "INFINITY"
Json to_json(const ValidationReport& r);
Json to_json(const BoundCheck& c);
/// Wall time is omitted unless requested, keeping reports byte-stable.
Json to_json(const VerificationReport& r, bool include_timing = false);
Json to_json(const ProofTrace& t);
Json to_json(const SubsetDecomposition& d);
Json to_json(const ExtremalResult& r, const FiniteGroup& g);
/// Kernel, cosets, representatives, phi, eta and psi.  Entries are parent
/// element indices when the system has a parent, local indices otherwise.
Json to_json(const FactorSystem& fs, const PairRepresentation& psi);

}  // namespace sumsetlab
