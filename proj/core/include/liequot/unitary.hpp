// Prime splitting in Q(sqrt(-2)) and the scalar obstruction for unitary images.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "liequot/ff.hpp"

namespace liequot::unitary {

enum class Split { split, inert, ramified };
enum class ResidueClass { P1, P3, P7, ramified };

std::string to_string(Split s);
std::string to_string(ResidueClass c);

struct PrimeClass {
  std::uint64_t p = 0;
  Split split_status = Split::ramified;
  std::uint64_t residue_size = 0;  // p when split, p^2 when inert
  ResidueClass cls = ResidueClass::ramified;
};

// Throws NonPrime for composite p.
PrimeClass classify_prime(std::uint64_t p);

// Primes below limit whose residue field has size 7 mod 8. Throws
// InputError when limit < 3.
std::vector<std::uint64_t> p7_scan(std::uint64_t limit);

enum class Conclusion { NoMu, MuExists };
std::string to_string(Conclusion c);

struct ObstructionResult {
  std::uint64_t q = 0;
  int m = 0;
  std::optional<ff::Code> witness;  // element of F_{q^2}
  ff::FieldPtr field;               // F_{q^2}
  Conclusion conclusion = Conclusion::NoMu;
};

// Looks for mu in F_{q^2} with mu^(q+1) = 1 and mu^m = -1. NoMu means
// diag(-1, 1, ..., 1) does not lie in the image of SU_m(q). Throws BadQ
// unless q is a prime power with q = 3 mod 4, InputError for m < 2.
ObstructionResult mu_obstruction(std::uint64_t q, int m);

}  // namespace liequot::unitary
