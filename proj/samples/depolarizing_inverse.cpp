// Copyright 2026 The ginvq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Drazin inverse of a depolarizing channel and what happens to its Choi spectrum.

#include <iostream>

#include "ginvq/ginvq.hpp"

int main() {
  using namespace ginvq;
  const std::size_t d = 2;
  for (double a : {0.25, 0.5, 0.9}) {
    const Channel ch = depolarizing(d, a);
    const DrazinResult dz = drazin_inverse(ch.super());
    const Channel inv = Channel::from_super(d, d, dz.inverse);
    const double b = depolarizing_drazin_parameter(a);
    std::cout << "a = " << a << "  index " << dz.index << "  inverse = D_" << b
              << " (gap " << fro_dist(dz.inverse, depolarizing(d, b).super()) << ")"
              << "  TP residual " << is_tp(inv).residual << "  min Choi eigenvalue "
              << is_cp(inv).min_choi_eigenvalue << "\n";
  }
}
