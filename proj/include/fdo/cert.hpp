#pragma once

namespace fdo {

// Truncation can refute membership with a witness, and it can certify a
// claim on the trusted window, but it can never certify an infinite
// condition outright; predicates over planes return all three answers.
enum class Cert {
    Yes,     // certified at the reported window
    No,      // refuted by a trusted witness
    Unknown, // not decidable at this precision
};

inline const char* cert_name(Cert c) {
    switch (c) {
        case Cert::Yes: return "yes-certified";
        case Cert::No: return "no-witness";
        case Cert::Unknown: return "unknown-at-precision";
    }
    return "?";
}

} // namespace fdo
