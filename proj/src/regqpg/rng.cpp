// Copyright 2026 The RegQPG Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "regqpg/rng.hpp"

#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

namespace regqpg {

double uniform(SplitMix64 &rng, double lo, double hi) {
    if (lo == hi) {
        return lo;
    }
    boost::random::uniform_real_distribution<double> dist(lo, hi);
    return dist(rng);
}

double gaussian(SplitMix64 &rng, double mean, double stddev) {
    if (stddev == 0.0) {
        return mean;
    }
    boost::random::normal_distribution<double> dist(mean, stddev);
    return dist(rng);
}

} // namespace regqpg
