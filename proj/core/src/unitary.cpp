#include "liequot/unitary.hpp"

#include "liequot/errors.hpp"
#include "liequot/lietype.hpp"

namespace liequot::unitary {

std::string to_string(Split s) {
  switch (s) {
    case Split::split:
      return "split";
    case Split::inert:
      return "inert";
    default:
      return "ramified";
  }
}

std::string to_string(ResidueClass c) {
  switch (c) {
    case ResidueClass::P1:
      return "P1";
    case ResidueClass::P3:
      return "P3";
    case ResidueClass::P7:
      return "P7";
    default:
      return "ramified";
  }
}

std::string to_string(Conclusion c) { return c == Conclusion::NoMu ? "NoMu" : "MuExists"; }

PrimeClass classify_prime(std::uint64_t p) {
  if (!ff::is_prime(p)) throw NonPrime(std::to_string(p) + " is not prime");
  PrimeClass pc;
  pc.p = p;
  if (p == 2) {
    pc.split_status = Split::ramified;
    pc.residue_size = 2;
    pc.cls = ResidueClass::ramified;
    return pc;
  }
  pc.split_status = ff::legendre(-2, p) == 1 ? Split::split : Split::inert;
  pc.residue_size = pc.split_status == Split::split ? p : p * p;
  const std::uint64_t r = pc.residue_size % 8;
  if (r % 4 == 1) {
    pc.cls = ResidueClass::P1;
  } else if (r == 3) {
    pc.cls = ResidueClass::P3;
  } else {
    pc.cls = ResidueClass::P7;
  }
  return pc;
}

std::vector<std::uint64_t> p7_scan(std::uint64_t limit) {
  if (limit < 3) throw InputError("p7_scan needs limit >= 3");
  std::vector<bool> composite(limit, false);
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 2; n < limit; ++n) {
    if (composite[n]) continue;
    for (std::uint64_t k = n * n; k < limit; k += n) composite[k] = true;
    if (classify_prime(n).cls == ResidueClass::P7) out.push_back(n);
  }
  return out;
}

ObstructionResult mu_obstruction(std::uint64_t q, int m) {
  if (m < 2) throw InputError("matrix size must be at least 2");
  if (q < 3 || q % 4 != 3) throw BadQ("q = " + std::to_string(q) + " is not 3 mod 4");
  const auto pp = lie::prime_power(q);
  ObstructionResult r;
  r.q = q;
  r.m = m;
  r.field = ff::make_field(pp.p, 2 * pp.e);
  const ff::Field& f = *r.field;
  // mu^(q+1) = 1 exactly on the cyclic subgroup generated by g^(q-1).
  const ff::Code zeta = f.pow(f.primitive_element(), q - 1);
  const ff::Code minus_one = f.neg(f.one());
  ff::Code mu = f.one();
  for (std::uint64_t k = 0; k <= q; ++k) {
    if (f.pow(mu, static_cast<std::uint64_t>(m)) == minus_one) {
      r.witness = mu;
      r.conclusion = Conclusion::MuExists;
      return r;
    }
    mu = f.mul(mu, zeta);
  }
  r.conclusion = Conclusion::NoMu;
  return r;
}

}  // namespace liequot::unitary
