#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "dickecat/dicke.hpp"
#include "dickecat/herald.hpp"

namespace dickecat {

inline constexpr std::string_view kGroundStateFormat = "dickecat.ground_state/1";

/// JSON document with params, sector, energy, residual and amplitudes. Doubles
/// are written in shortest round-trip form, so read(write(g)) is bit-identical.
void write_ground_state(std::ostream& out, const GroundState& ground);

/// Throws FormatError on malformed input, a wrong format tag or an amplitude
/// count that does not match the rebuilt basis.
GroundState read_ground_state(std::istream& in);

/// {"n", "probability", "amplitudes": [[re, im], ...]} on one line.
std::string herald_outcome_json(const HeraldOutcome& outcome);

}  // namespace dickecat
