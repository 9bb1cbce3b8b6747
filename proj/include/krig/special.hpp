// Copyright 2026 the krig authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace krig::special {

/// Gamma function for x > 0. Throws DomainError for x <= 0.
double gamma_fn(double x);

/// Modified Bessel function of the second kind K_nu(z) for nu > 0, z > 0.
///
/// Temme's series for z < 2, Steed's continued fraction beyond, followed by
/// upward recurrence in the order. For z past the exponential underflow
/// threshold the result is 0. Throws DomainError for z <= 0 or nu <= 0.
double bessel_k(double nu, double z);

}  // namespace krig::special
