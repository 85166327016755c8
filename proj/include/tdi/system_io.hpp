#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "tdi/families.hpp"
#include "tdi/tdi_system.hpp"

namespace tdi {

// System spec file: '#' comments, then directives
//   family <name> key=value...   (optional shorthand)
//   dim <d>                      (required when seeds/forms are given)
//   seed <polynomial>            (zero or more, polycore text format)
//   form <polynomial>            (zero or more; an already-generated system)
// Seeds and forms both feed the derivative-closure construction; generating
// from the forms of a reduced system reproduces that system.
struct SystemSpecFile {
    std::optional<FamilySpec> family;
    std::size_t dim = 0;
    std::vector<Polynomial> seeds;
};

SystemSpecFile parse_system_spec(std::istream& in);
SystemSpecFile parse_system_spec_string(const std::string& text);

TdiSystem build_from_spec(const SystemSpecFile& spec);

// Emits "dim" plus one "form" line per form; parses back to the same system.
std::string emit_system(const TdiSystem& sys);

}  // namespace tdi
