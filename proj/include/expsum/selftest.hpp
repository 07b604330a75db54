/*
   Copyright 2026 The expsum authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <iosfwd>

namespace expsum {

// Recomputes a battery of closed-form facts from scratch and compares them
// against the engines: quadratic Gauss sum moduli, the lifting relation for
// extension sums, Euler characteristics recovered from point counts, local
// Milnor numbers against the weight product formula, the two dimension
// formulas against each other, a full eigenvalue recovery round trip, and
// agreement of the two histogram engines. Prints one line per oracle to
// `os` and returns the number of failures; 0 means every oracle passed.
int run_selftest(std::ostream& os);

}  // namespace expsum
