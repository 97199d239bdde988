// Copyright (c) 2026 The breather developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace breather {

// Base class for all library failures so callers can catch one type.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A line measure has infinite total variation or its quadrature diverges.
class NonFiniteMeasure : public Error {
public:
  using Error::Error;
};

// No solvable temporal modes: R = {k : F_k[N] != 0} is empty at this cutoff.
class EmptyRegularSet : public Error {
public:
  using Error::Error;
};

// Operands live on different grids or mode sets.
class ModeMismatch : public Error {
public:
  using Error::Error;
};

// Some F_k[N] <= 0 on R; the H inner product is not defined.
class NonpositiveKernel : public Error {
public:
  using Error::Error;
};

// Cubic products would alias: time grid too coarse (M < 4K+1).
class AliasRisk : public Error {
public:
  using Error::Error;
};

// V_k(x) <= 0 at some node: mode operator loses positivity.
class NonElliptic : public Error {
public:
  using Error::Error;
};

// Tridiagonal pivot underflowed during elimination.
class SingularOperator : public Error {
public:
  using Error::Error;
};

// The ray through u never meets the Nehari manifold (int h u^4 <= 0).
class NoPositiveQuartic : public Error {
public:
  using Error::Error;
};

class MaxIterExceeded : public Error {
public:
  using Error::Error;
};

// Armijo backtracking underflowed the step.
class NoDescentDirection : public Error {
public:
  using Error::Error;
};

// Malformed configuration or input file.
class ConfigError : public Error {
public:
  using Error::Error;
};

class MissingArtifact : public Error {
public:
  using Error::Error;
};

} // namespace breather
