#pragma once

// Recurrence documents (JSON). Keys are emitted in sorted order and integers
// in decimal, so files are stable under diff. Integers that do not fit in 64
// bits are written as decimal strings.

#include <iosfwd>
#include <string>
#include <variant>

#include "json.hpp"
#include "qtspp/guess.hpp"

namespace qtspp {

nlohmann::json to_json(const ModularRecurrence& rec);
nlohmann::json to_json(const SymbolicRecurrence& rec);

/// Both throw FormatError on missing or inconsistent fields.
ModularRecurrence modular_from_json(const nlohmann::json& doc);
SymbolicRecurrence symbolic_from_json(const nlohmann::json& doc);

using AnyRecurrence = std::variant<ModularRecurrence, SymbolicRecurrence>;

void write_recurrence(std::ostream& os, const ModularRecurrence& rec);
void write_recurrence(std::ostream& os, const SymbolicRecurrence& rec);
/// Dispatches on the "mode" field.
AnyRecurrence read_recurrence(std::istream& is);

/// Decimal integer from a JSON number or string.
BigInt json_to_bigint(const nlohmann::json& v);
nlohmann::json bigint_to_json(const BigInt& v);

}  // namespace qtspp
