#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tiltkit {

/// Structured result of a predicate or audit run. `bounds` records every
/// search cap that limited the run, so a verdict is reproducible from the
/// report alone. A `Fails` verdict always carries a checkable witness.
struct CheckReport {
    enum class Verdict { Holds, Fails, Inconclusive };

    Verdict verdict = Verdict::Holds;
    std::optional<std::string> witness;
    std::vector<std::pair<std::string, long long>> bounds;
    std::vector<std::string> refs;                          // operation tags
    std::vector<std::pair<std::string, std::string>> data;  // named sub-verdicts
    std::string notes;

    bool holds() const { return verdict == Verdict::Holds; }
    bool fails() const { return verdict == Verdict::Fails; }

    void bound(const std::string& name, long long value) { bounds.emplace_back(name, value); }
    void datum(const std::string& key, const std::string& value) { data.emplace_back(key, value); }

    static const char* verdict_name(Verdict v) {
        switch (v) {
            case Verdict::Holds: return "holds";
            case Verdict::Fails: return "fails-with-witness";
            default: return "inconclusive-at-bound";
        }
    }
    const char* verdict_name() const { return verdict_name(verdict); }
};

} // namespace tiltkit
