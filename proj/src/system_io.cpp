#include "tdi/system_io.hpp"

#include <istream>
#include <sstream>

namespace tdi {

SystemSpecFile parse_system_spec(std::istream& in) {
    SystemSpecFile spec;
    std::string line;
    int lineno = 0;
    std::vector<std::pair<int, std::string>> pending;  // polynomial lines, parsed once dim known
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        if (line[start] == '#') continue;
        std::istringstream is(line.substr(start));
        std::string directive;
        is >> directive;
        std::string rest;
        std::getline(is, rest);
        if (directive == "family") {
            try {
                spec.family = FamilySpec::parse(rest);
            } catch (const ParseError& e) {
                throw ParseError(e.what(), lineno, static_cast<int>(start));
            }
        } else if (directive == "dim") {
            long d = 0;
            try {
                d = std::stol(rest);
            } catch (...) {
                throw ParseError("dim needs an integer", lineno, static_cast<int>(start));
            }
            if (d < 1) throw ParseError("dim must be positive", lineno, static_cast<int>(start));
            spec.dim = static_cast<std::size_t>(d);
        } else if (directive == "seed" || directive == "form") {
            pending.emplace_back(lineno, rest);
        } else {
            throw ParseError("unknown directive '" + directive + "'", lineno,
                             static_cast<int>(start));
        }
    }
    if (!pending.empty() && spec.dim == 0)
        throw ParseError("seed/form lines require a dim directive", pending.front().first, 1);
    for (const auto& [ln, text] : pending) {
        try {
            spec.seeds.push_back(Polynomial::parse(text, spec.dim));
        } catch (const ParseError& e) {
            throw ParseError(e.what(), ln, 1);
        }
    }
    return spec;
}

SystemSpecFile parse_system_spec_string(const std::string& text) {
    std::istringstream is(text);
    return parse_system_spec(is);
}

TdiSystem build_from_spec(const SystemSpecFile& spec) {
    if (!spec.seeds.empty()) return generate_from_seeds(spec.seeds);
    if (spec.family) return generate_family(*spec.family);
    throw InputError("system spec provides neither seeds nor a family");
}

std::string emit_system(const TdiSystem& sys) {
    std::ostringstream os;
    os << "dim " << sys.dimension << "\n";
    for (const auto& f : sys.forms) os << "form " << f.to_string() << "\n";
    return os.str();
}

}  // namespace tdi
