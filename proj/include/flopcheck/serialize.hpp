#pragma once

#include "flopcheck/continuation.hpp"
#include "flopcheck/fm.hpp"
#include "flopcheck/givental.hpp"
#include "flopcheck/quantum.hpp"

#include <json.hpp>

#include <charconv>
#include <string>

namespace flopcheck {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "flopcheck/1";

Json to_json(const Rat& x);
Json to_json(const BigC& z);
Json to_json(const SymScalar& s);
Json to_json(const RatClass& c);
Json to_json(const SymClass& c);
Json to_json(const NumClass& c);
Json to_json(const GiventalElement& g);
Json to_json(const ISeries& s);
Json to_json(const PathSpec& p);
Json to_json(const UMatrix& u);
Json to_json(const CMatrix& m);
Json to_json(const RatMatrix& m);
/// {"r", "basis", "matrix"} for FM_H in monomial bases, plus the line-bundle lattice matrix.
Json fm_matrix_json(const FlopData& fd);

Rat rat_from_json(const Json& j);
BigC bigc_from_json(const Json& j);
SymScalar sym_from_json(const Json& j);
/// Only the ring label is checked; the caller supplies the ring.
RatClass rat_class_from_json(const Json& j, const Ring& ring);
SymClass sym_class_from_json(const Json& j, const Ring& ring);
/// [[re, im], ...] with numbers or decimal strings, or {"id", "waypoints", "log_q0"}.
PathSpec path_from_json(const Json& j);

/// Deterministic serialization: ordered keys, two-space indent, trailing newline.
std::string dump(const Json& j);

}  // namespace flopcheck
