#pragma once

#include <string>
#include <vector>

namespace mfslab {

enum class CheckStatus { Pass, Fail, Skipped };

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    std::string witness;  // present iff status == Fail
};

struct Report {
    std::vector<CheckResult> checks;

    void pass(std::string name) { checks.push_back({std::move(name), CheckStatus::Pass, {}}); }
    void fail(std::string name, std::string witness) {
        checks.push_back({std::move(name), CheckStatus::Fail, std::move(witness)});
    }
    void skip(std::string name) { checks.push_back({std::move(name), CheckStatus::Skipped, {}}); }
    void check(std::string name, bool ok, std::string witness = "") {
        if (ok)
            pass(std::move(name));
        else
            fail(std::move(name), std::move(witness));
    }
    void merge(const Report& other, const std::string& prefix = "") {
        for (const CheckResult& c : other.checks)
            checks.push_back({prefix + c.name, c.status, c.witness});
    }

    bool ok() const {
        for (const CheckResult& c : checks)
            if (c.status == CheckStatus::Fail) return false;
        return true;
    }
    int failures() const {
        int n = 0;
        for (const CheckResult& c : checks) n += c.status == CheckStatus::Fail;
        return n;
    }
    std::string first_failure() const {
        for (const CheckResult& c : checks)
            if (c.status == CheckStatus::Fail) return c.name + (c.witness.empty() ? "" : ": " + c.witness);
        return "";
    }
};

}  // namespace mfslab
