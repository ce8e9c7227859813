// Copyright 2026 The ds3sim Authors
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

#ifndef DS3_GROUP_H
#define DS3_GROUP_H

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ds3/numerics.h"

namespace ds3 {

/// An element of S3 = {e, c, c^2, t, tc, tc^2}. The enumerator order is the canonical
/// ordering and doubles as the qudit basis ordering |e>,|c>,|c2>,|t>,|tc>,|tc2>.
enum class GroupElement : uint8_t { e = 0, c = 1, c2 = 2, t = 3, tc = 4, tc2 = 5 };

inline constexpr int kGroupOrder = 6;
inline constexpr std::array<GroupElement, kGroupOrder> kAllElements = {
    GroupElement::e, GroupElement::c, GroupElement::c2, GroupElement::t, GroupElement::tc, GroupElement::tc2};

constexpr int index_of(GroupElement g) {
    return static_cast<int>(g);
}

/// Serialized names "e","c","c2","t","tc","tc2".
std::string_view name_of(GroupElement g);
/// Inverse of name_of. Throws std::invalid_argument for unknown names.
GroupElement parse_element(std::string_view name);

GroupElement multiply(GroupElement a, GroupElement b);
GroupElement inverse(GroupElement a);
/// g h g^-1
GroupElement conjugate(GroupElement g, GroupElement h);

using CayleyTable = std::array<std::array<GroupElement, kGroupOrder>, kGroupOrder>;

/// The multiplication table, generated from c^3 = e, t^2 = e, ct = tc^2 and checked
/// against a hardcoded copy on first use.
const CayleyTable &cayley_table();

struct ConjugacyClassData {
    std::vector<GroupElement> elements;
    std::vector<GroupElement> normalizer;
    /// coset_reps[i] * elements[0] * coset_reps[i]^-1 == elements[i]
    std::vector<GroupElement> coset_reps;
};

/// Class of `representative`, its normalizer (centralizer of elements[0]) and coset representatives.
ConjugacyClassData conjugacy_class(GroupElement representative);
/// {e}, {c, c2}, {t, tc, tc2}
std::vector<ConjugacyClassData> conjugacy_classes();

enum class IrrepLabel { s3_trivial, s3_sign, s3_two, z3_omega };

struct Irrep {
    IrrepLabel label;
    int dimension;
    std::vector<GroupElement> domain;
    std::array<ComplexMatrix, kGroupOrder> matrices;  // empty for elements outside the domain

    bool contains(GroupElement g) const;
};

std::string_view name_of(IrrepLabel label);

/// Irreps of N_e = S3 and of N_c = Z3 used by the anyon model.
const Irrep &irrep(IrrepLabel label);

/// Throws std::out_of_range if g is outside the irrep's domain.
const ComplexMatrix &irrep_matrix(const Irrep &r, GroupElement g);
Complex character(const Irrep &r, GroupElement g);

}  // namespace ds3

#endif
