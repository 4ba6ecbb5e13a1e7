#pragma once

#include "soliton/error.hpp"

namespace soliton {

/// Signature flags of the ambient product: `epsilon` multiplies dt^2 on the
/// vertical factor, `epsilon_tilde` is the sign of the quotient metric.
struct SignPair {
  int epsilon = 1;
  int epsilon_tilde = 1;

  SignPair() = default;
  SignPair(int eps, int eps_tilde) : epsilon(eps), epsilon_tilde(eps_tilde) {
    if ((eps != 1 && eps != -1) || (eps_tilde != 1 && eps_tilde != -1))
      throw Error(ErrorKind::InvalidArgument, "sign flags must be +1 or -1");
  }

  /// epsilon * epsilon_tilde == -1 is the case where w = +-1 are barrier solutions.
  bool has_barriers() const { return epsilon * epsilon_tilde == -1; }

  friend bool operator==(const SignPair&, const SignPair&) = default;
};

}  // namespace soliton
