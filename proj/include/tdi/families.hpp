#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tdi/tdi_system.hpp"

namespace tdi {

// The four worked families: the classical one-dimensional system with seed
// z^k, the full multidimensional monomial system of degree k, the box system
// with seed (z_1...z_d)^l, and the binary system with seed z_1^{k1} z_2^{k2}.
enum class FamilyKind { Vinogradov, Parsell, Akc, Binary };

struct FamilySpec {
    FamilyKind kind;
    std::int64_t d = 1;   // Parsell / Akc dimension
    std::int64_t k = 1;   // Vinogradov / Parsell degree
    std::int64_t l = 1;   // Akc per-variable degree
    std::int64_t k1 = 1;  // Binary exponents
    std::int64_t k2 = 1;

    std::string name() const;
    std::string params() const;  // e.g. "k=2" or "d=2 k=2"
    std::size_t dimension() const;

    // Shorthand: "vinogradov k=3", "parsell d=2 k=2", "akc d=2 l=1",
    // "binary k1=2 k2=1".
    static FamilySpec parse(const std::string& text);
};

struct SystemStats {
    BigInt rank;
    BigInt weight;
};

// Exact rank/weight from the closed forms, without generating the system.
SystemStats closed_form_stats(const FamilySpec& family);

std::vector<Polynomial> family_seeds(const FamilySpec& family);

TdiSystem generate_family(const FamilySpec& family);

}  // namespace tdi
