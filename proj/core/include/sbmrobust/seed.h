// Copyright 2026 The sbmrobust Authors.
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

// Stable seed splitting. Every random stream in the library is seeded from a
// master seed plus integer coordinates, so results never depend on the order
// in which streams are created.

#ifndef SBMROBUST_SEED_H_
#define SBMROBUST_SEED_H_

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace sbmrobust {

using Rng = std::mt19937_64;

// SplitMix64 finalizer.
constexpr uint64_t Mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// 64-bit FNV-1a, used to turn names (methods, purposes) into coordinates.
constexpr uint64_t Fnv1a(std::string_view text) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// child = Mix64(...Mix64(Mix64(master) ^ c0) ^ c1 ...).
constexpr uint64_t DeriveSeed(uint64_t master,
                              std::initializer_list<uint64_t> coordinates) {
  uint64_t h = Mix64(master);
  for (uint64_t c : coordinates) h = Mix64(h ^ c);
  return h;
}

inline double Uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace sbmrobust

#endif  // SBMROBUST_SEED_H_
