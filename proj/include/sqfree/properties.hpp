#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace sqfree {

struct PropertyCheck {
    std::string id;
    std::string description;
    bool passed = false;
    std::string detail;
    double seconds = 0;
};

/// Exhaustive and seeded-random checks of the h images, the completion
/// rules, the Crochemore test, modular morphisms and the bundled morphisms.
std::vector<PropertyCheck> morphism_properties(unsigned threads = 1);

struct BundledMorphismCertificate {
    std::size_t p = 0;
    std::size_t k = 0;
    std::size_t alpha = 0;
    std::size_t q_min = 0;
    bool uniform_kp = false;
    bool circular = false;
    bool squarefree = false;
    bool squarefree_modulo_p = false;

    bool passed() const { return uniform_kp && circular && squarefree && squarefree_modulo_p; }
};

/// Checks the bundled morphism for p: kp-uniform, circular, Crochemore on
/// g and on g^{alpha, p}.
BundledMorphismCertificate certify_bundled_morphism(std::size_t p);

} // namespace sqfree
