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

#include "ds3/group.h"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ds3 {

namespace {

using G = GroupElement;

// Normal form t^a c^b.
struct Word {
    int t_power;
    int c_power;
};

Word to_word(G g) {
    int i = index_of(g);
    return {i / 3, i % 3};
}

G from_word(Word w) {
    return static_cast<G>(3 * (w.t_power % 2) + ((w.c_power % 3) + 3) % 3);
}

// (t^a c^b)(t^x c^y): move c^b past t^x using c t = t c^2, i.e. c^b t = t c^{-b}.
G multiply_from_relations(G a, G b) {
    Word wa = to_word(a);
    Word wb = to_word(b);
    int moved_c = wb.t_power == 1 ? -wa.c_power : wa.c_power;
    return from_word({wa.t_power + wb.t_power, moved_c + wb.c_power});
}

CayleyTable build_table() {
    CayleyTable table{};
    for (G a : kAllElements) {
        for (G b : kAllElements) {
            table[index_of(a)][index_of(b)] = multiply_from_relations(a, b);
        }
    }
    // Hardcoded copy for cross-checking the generated table.
    constexpr int expected[6][6] = {
        {0, 1, 2, 3, 4, 5},
        {1, 2, 0, 5, 3, 4},
        {2, 0, 1, 4, 5, 3},
        {3, 4, 5, 0, 1, 2},
        {4, 5, 3, 2, 0, 1},
        {5, 3, 4, 1, 2, 0},
    };
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) {
            if (index_of(table[i][j]) != expected[i][j]) {
                throw std::logic_error("cayley_table: generated table disagrees with hardcoded table");
            }
        }
    }
    return table;
}

}  // namespace

std::string_view name_of(GroupElement g) {
    static constexpr std::array<std::string_view, 6> names = {"e", "c", "c2", "t", "tc", "tc2"};
    return names[index_of(g)];
}

GroupElement parse_element(std::string_view name) {
    for (G g : kAllElements) {
        if (name_of(g) == name) {
            return g;
        }
    }
    throw std::invalid_argument("unknown S3 element: " + std::string(name));
}

const CayleyTable &cayley_table() {
    static const CayleyTable table = build_table();
    return table;
}

GroupElement multiply(GroupElement a, GroupElement b) {
    return cayley_table()[index_of(a)][index_of(b)];
}

GroupElement inverse(GroupElement a) {
    for (G b : kAllElements) {
        if (multiply(a, b) == G::e) {
            return b;
        }
    }
    throw std::logic_error("inverse: no inverse found");
}

GroupElement conjugate(GroupElement g, GroupElement h) {
    return multiply(multiply(g, h), inverse(g));
}

ConjugacyClassData conjugacy_class(GroupElement representative) {
    ConjugacyClassData out;
    out.elements.push_back(representative);
    out.coset_reps.push_back(G::e);
    for (G q : kAllElements) {
        G image = conjugate(q, representative);
        if (std::find(out.elements.begin(), out.elements.end(), image) == out.elements.end()) {
            out.elements.push_back(image);
            out.coset_reps.push_back(q);
        }
        if (image == representative) {
            out.normalizer.push_back(q);
        }
    }
    return out;
}

std::vector<ConjugacyClassData> conjugacy_classes() {
    return {conjugacy_class(G::e), conjugacy_class(G::c), conjugacy_class(G::t)};
}

bool Irrep::contains(GroupElement g) const {
    return std::find(domain.begin(), domain.end(), g) != domain.end();
}

std::string_view name_of(IrrepLabel label) {
    switch (label) {
        case IrrepLabel::s3_trivial:
            return "S3_1";
        case IrrepLabel::s3_sign:
            return "S3_-1";
        case IrrepLabel::s3_two:
            return "S3_2";
        case IrrepLabel::z3_omega:
            return "Z3_omega";
    }
    return "?";
}

namespace {

ComplexMatrix scalar(Complex v) {
    ComplexMatrix m(1, 1);
    m(0, 0) = v;
    return m;
}

Irrep make_one_dim(IrrepLabel label, const std::array<double, 6> &values) {
    Irrep r{label, 1, {kAllElements.begin(), kAllElements.end()}, {}};
    for (G g : kAllElements) {
        r.matrices[index_of(g)] = scalar(values[index_of(g)]);
    }
    return r;
}

Irrep make_two_dim() {
    const Complex w = omega();
    const Complex wb = omega_bar();
    Irrep r{IrrepLabel::s3_two, 2, {kAllElements.begin(), kAllElements.end()}, {}};
    r.matrices[index_of(G::e)] = matrix_from_rows({{1, 0}, {0, 1}});
    r.matrices[index_of(G::c)] = matrix_from_rows({{wb, 0}, {0, w}});
    r.matrices[index_of(G::c2)] = matrix_from_rows({{w, 0}, {0, wb}});
    r.matrices[index_of(G::t)] = matrix_from_rows({{0, 1}, {1, 0}});
    r.matrices[index_of(G::tc)] = matrix_from_rows({{0, w}, {wb, 0}});
    r.matrices[index_of(G::tc2)] = matrix_from_rows({{0, wb}, {w, 0}});
    return r;
}

Irrep make_z3_omega() {
    Irrep r{IrrepLabel::z3_omega, 1, {G::e, G::c, G::c2}, {}};
    r.matrices[index_of(G::e)] = scalar(1.0);
    r.matrices[index_of(G::c)] = scalar(omega());
    r.matrices[index_of(G::c2)] = scalar(omega_bar());
    return r;
}

}  // namespace

const Irrep &irrep(IrrepLabel label) {
    static const Irrep trivial = make_one_dim(IrrepLabel::s3_trivial, {1, 1, 1, 1, 1, 1});
    static const Irrep sign = make_one_dim(IrrepLabel::s3_sign, {1, 1, 1, -1, -1, -1});
    static const Irrep two = make_two_dim();
    static const Irrep z3 = make_z3_omega();
    switch (label) {
        case IrrepLabel::s3_trivial:
            return trivial;
        case IrrepLabel::s3_sign:
            return sign;
        case IrrepLabel::s3_two:
            return two;
        case IrrepLabel::z3_omega:
            return z3;
    }
    throw std::invalid_argument("irrep: unknown label");
}

const ComplexMatrix &irrep_matrix(const Irrep &r, GroupElement g) {
    if (!r.contains(g)) {
        throw std::out_of_range("irrep_matrix: element " + std::string(name_of(g)) + " outside the domain of " +
                                std::string(name_of(r.label)));
    }
    return r.matrices[index_of(g)];
}

Complex character(const Irrep &r, GroupElement g) {
    return irrep_matrix(r, g).trace();
}

}  // namespace ds3
