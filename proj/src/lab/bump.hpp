#pragma once

namespace zkd::lab {

// Fixed smooth even cutoff: 1 on 1/2 <= |r| <= 2, 0 outside 1/4 < |r| < 4.
// Built from s(u) = g(u) / (g(u) + g(1-u)), g(u) = exp(-1/u) for u > 0:
//   psi1(r) = s(4(|r| - 1/4)) * s((4 - |r|)/2).
double Psi1(double r);
double Psi1Derivative(double r);

// The smooth step s(u) and its derivative.
double SmoothStep(double u);
double SmoothStepDerivative(double u);

}  // namespace zkd::lab
