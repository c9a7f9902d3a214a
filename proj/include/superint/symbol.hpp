#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace superint {

enum class SymKind : uint8_t { Base = 0, Formal = 1, Param = 2, Jet = 3 };

/// Interned symbol. The packed id orders as (kind, name, jet multi-index),
/// which is the internal monomial order; printed output is re-sorted by name
/// so it does not depend on interning order.
struct Sym {
    uint64_t packed = 0;

    friend bool operator==(Sym a, Sym b) { return a.packed == b.packed; }
    friend bool operator!=(Sym a, Sym b) { return a.packed != b.packed; }
    friend bool operator<(Sym a, Sym b) { return a.packed < b.packed; }
    friend bool operator>(Sym a, Sym b) { return a.packed > b.packed; }
};

constexpr int kJetOffset = 1 << 20; // jet orders stored with this bias; supports antiderivative (negative) indices

class SymTab {
public:
    static SymTab& instance() {
        static SymTab tab;
        return tab;
    }

    // --- interning -------------------------------------------------------

    Sym base(const std::string& name) { return intern(SymKind::Base, name); }
    Sym formal(const std::string& name) { return intern(SymKind::Formal, name); }
    Sym param(const std::string& name, bool nonzero = false) {
        Sym s = intern(SymKind::Param, name);
        if (nonzero) set_nonzero(s);
        return s;
    }

    /// Registers (or looks up) a dependent function of the given base variables.
    uint32_t dependent(const std::string& name, const std::vector<Sym>& vars) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = name_ids_.find(name);
        if (it != name_ids_.end()) {
            uint32_t id = it->second;
            if (deps_.count(id) && deps_.at(id) != vars)
                throw std::invalid_argument("dependent '" + name + "' re-registered with different variables");
            if (!deps_.count(id))
                throw std::invalid_argument("name '" + name + "' already used for a non-dependent symbol");
            return id;
        }
        uint32_t id = add_name(name);
        deps_[id] = vars;
        return id;
    }

    Sym jet(uint32_t dep_id, int d0, int d1 = 0) const {
        Sym s;
        s.packed = pack(SymKind::Jet, dep_id, d0 + kJetOffset, d1 + kJetOffset);
        return s;
    }

    bool is_dependent(const std::string& name) const {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = name_ids_.find(name);
        return it != name_ids_.end() && deps_.count(it->second) > 0;
    }

    std::optional<Sym> lookup(const std::string& name) const {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = name_ids_.find(name);
        if (it == name_ids_.end()) return std::nullopt;
        auto kind_it = kinds_.find(it->second);
        if (kind_it == kinds_.end()) return std::nullopt; // a dependent, not a plain symbol
        Sym s;
        s.packed = pack(kind_it->second, it->second, kJetOffset, kJetOffset);
        return s;
    }

    std::optional<uint32_t> lookup_dependent(const std::string& name) const {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = name_ids_.find(name);
        if (it == name_ids_.end() || !deps_.count(it->second)) return std::nullopt;
        return it->second;
    }

    std::vector<std::string> all_names() const {
        std::lock_guard<std::mutex> lock(mu_);
        return {names_.begin(), names_.end()};
    }

    // --- accessors -------------------------------------------------------

    static SymKind kind(Sym s) { return static_cast<SymKind>(s.packed >> 62); }
    static uint32_t name_id(Sym s) { return static_cast<uint32_t>((s.packed >> 42) & 0xFFFFF); }
    static int jet_d0(Sym s) { return static_cast<int>((s.packed >> 21) & 0x1FFFFF) - kJetOffset; }
    static int jet_d1(Sym s) { return static_cast<int>(s.packed & 0x1FFFFF) - kJetOffset; }

    const std::string& name(Sym s) const { return name_of(name_id(s)); }
    const std::string& name_of(uint32_t id) const {
        std::lock_guard<std::mutex> lock(mu_);
        return names_.at(id);
    }

    const std::vector<Sym>& dep_vars(uint32_t dep_id) const {
        std::lock_guard<std::mutex> lock(mu_);
        return deps_.at(dep_id);
    }

    /// Index of `var` in the dependency list, or -1 when the dependent does not depend on it.
    int dep_var_index(uint32_t dep_id, Sym var) const {
        std::lock_guard<std::mutex> lock(mu_);
        const auto& v = deps_.at(dep_id);
        for (size_t i = 0; i < v.size(); ++i)
            if (v[i] == var) return static_cast<int>(i);
        return -1;
    }

    void set_nonzero(Sym s) {
        std::lock_guard<std::mutex> lock(mu_);
        nonzero_[s.packed] = true;
    }

    /// Whether negative exponents of this symbol are admissible (assumed-nonzero
    /// parameters and formal constants; hbar is a formal unit of the quantum ring).
    bool invertible(Sym s) const {
        if (kind(s) == SymKind::Formal) return true;
        std::lock_guard<std::mutex> lock(mu_);
        auto it = nonzero_.find(s.packed);
        return it != nonzero_.end() && it->second;
    }

    /// Fresh parameter name with the given prefix (k1, k2, ... style).
    std::string fresh_name(const std::string& prefix) {
        std::lock_guard<std::mutex> lock(mu_);
        for (;;) {
            std::string cand = prefix + std::to_string(++fresh_counter_[prefix]);
            if (!name_ids_.count(cand)) return cand;
        }
    }

private:
    SymTab() = default;

    static uint64_t pack(SymKind k, uint32_t name, int b0, int b1) {
        return (static_cast<uint64_t>(k) << 62) | (static_cast<uint64_t>(name & 0xFFFFF) << 42) |
               (static_cast<uint64_t>(b0 & 0x1FFFFF) << 21) | static_cast<uint64_t>(b1 & 0x1FFFFF);
    }

    Sym intern(SymKind k, const std::string& name) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = name_ids_.find(name);
        uint32_t id;
        if (it != name_ids_.end()) {
            id = it->second;
            auto kit = kinds_.find(id);
            if (kit == kinds_.end() || kit->second != k)
                throw std::invalid_argument("symbol '" + name + "' already interned with a different kind");
        } else {
            id = add_name(name);
            kinds_[id] = k;
        }
        Sym s;
        s.packed = pack(k, id, kJetOffset, kJetOffset);
        return s;
    }

    uint32_t add_name(const std::string& name) {
        uint32_t id = static_cast<uint32_t>(names_.size());
        if (id >= (1u << 20)) throw std::runtime_error("symbol table full");
        names_.push_back(name);
        name_ids_[name] = id;
        return id;
    }

    mutable std::mutex mu_;
    std::deque<std::string> names_;
    std::map<std::string, uint32_t> name_ids_;
    std::map<uint32_t, SymKind> kinds_;
    std::map<uint32_t, std::vector<Sym>> deps_;
    std::map<uint64_t, bool> nonzero_;
    std::map<std::string, int> fresh_counter_;
};

// Convenience handles for the standard vocabulary.
struct Vocab {
    Sym x, y, z, hbar;
    Sym sigma, Lambda, lambda, cgamma, sgamma, z0;
    uint32_t V1, V2, F, U, P1;

    static const Vocab& get() {
        static Vocab v = [] {
            Vocab w;
            auto& t = SymTab::instance();
            w.x = t.base("x");
            w.y = t.base("y");
            w.z = t.base("z");
            w.hbar = t.formal("hbar");
            w.sigma = t.param("sigma");
            w.Lambda = t.param("Lambda");
            w.lambda = t.param("lambda");
            w.cgamma = t.param("cgamma", true);
            w.sgamma = t.param("sgamma", true);
            w.z0 = t.param("z0", true);
            w.V1 = t.dependent("V1", {w.x});
            w.V2 = t.dependent("V2", {w.y});
            w.F = t.dependent("F", {w.z});
            w.U = t.dependent("U", {w.z});
            w.P1 = t.dependent("P1", {w.z});
            return w;
        }();
        return v;
    }
};

inline Sym jet(uint32_t dep, int d0, int d1 = 0) { return SymTab::instance().jet(dep, d0, d1); }

} // namespace superint
