// Copyright 2026 The agentvote Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Regenerates data/synthetic. Usage: make_synthetic <dir>

#include <fstream>
#include <iostream>

#include "agentvote/forecast.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_synthetic <dir>\n";
    return 1;
  }
  const std::filesystem::path dir = argv[1];
  const agentvote::Value biases[] = {-2, -1, 0, 1, 2};
  const auto data = agentvote::forecast::synthetic_dataset(60, biases, 0.0, 2016);
  std::ofstream(dir / "predictions.csv") << agentvote::forecast::predictions_csv(data);
  std::ofstream(dir / "actuals.csv") << agentvote::forecast::actuals_csv(data);
  return 0;
}
