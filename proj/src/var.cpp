#include "ratode/var.hpp"

#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

namespace ratode {

namespace {

struct Interner {
    std::shared_mutex mu;
    std::vector<std::unique_ptr<std::string>> names;
    std::unordered_map<std::string, std::uint32_t> index;

    Interner() {
        // Order fixes the monomial order: earlier = larger.
        static const char* const fixed[] = {
            "x", "c", "k", "t", "s", "w'", "w", "y", "z", "delta",
            "f", "f1", "f2", "f3", "f4",
            "a", "a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8", "a9",
            "b", "b1", "b2", "b3", "b4", "b5", "b6", "b7", "b8", "b9",
        };
        for (const char* n : fixed) intern_locked(n);
    }

    std::uint32_t intern_locked(std::string_view n) {
        auto it = index.find(std::string(n));
        if (it != index.end()) return it->second;
        auto id = static_cast<std::uint32_t>(names.size());
        names.push_back(std::make_unique<std::string>(n));
        index.emplace(std::string(n), id);
        return id;
    }
};

Interner& interner() {
    static Interner in;
    return in;
}

} // namespace

Var Var::named(std::string_view name) {
    if (name.empty()) throw std::invalid_argument("empty variable name");
    auto& in = interner();
    {
        std::shared_lock lock(in.mu);
        auto it = in.index.find(std::string(name));
        if (it != in.index.end()) return Var(it->second);
    }
    std::unique_lock lock(in.mu);
    return Var(in.intern_locked(name));
}

std::optional<Var> Var::find(std::string_view name) {
    auto& in = interner();
    std::shared_lock lock(in.mu);
    auto it = in.index.find(std::string(name));
    if (it == in.index.end()) return std::nullopt;
    return Var(it->second);
}

const std::string& Var::name() const {
    auto& in = interner();
    std::shared_lock lock(in.mu);
    return *in.names.at(id_);
}

namespace vars {
Var x() { static const Var v = Var::named("x"); return v; }
Var c() { static const Var v = Var::named("c"); return v; }
Var k() { static const Var v = Var::named("k"); return v; }
Var t() { static const Var v = Var::named("t"); return v; }
Var s() { static const Var v = Var::named("s"); return v; }
Var wp() { static const Var v = Var::named("w'"); return v; }
Var w() { static const Var v = Var::named("w"); return v; }
Var y() { static const Var v = Var::named("y"); return v; }
Var z() { static const Var v = Var::named("z"); return v; }
Var delta() { static const Var v = Var::named("delta"); return v; }
} // namespace vars

bool is_reserved_name(std::string_view name) {
    static const char* const reserved[] = {"x", "c", "k", "t", "s", "w", "y", "z", "delta"};
    for (const char* r : reserved)
        if (name == r) return true;
    return false;
}

std::string_view role_name(Role r) {
    switch (r) {
    case Role::ConstantParam: return "constant-parameter";
    case Role::FunctionalCoeff: return "functional-coefficient";
    case Role::CurveVar: return "curve-var";
    case Role::CurveParam: return "curve-param";
    case Role::SolutionVar: return "solution-var";
    case Role::UnknownW: return "unknown-w";
    case Role::ConstantC: return "constant-c";
    }
    return "?";
}

void VarRegistry::add(Var v, Role r) {
    for (auto& [var, role] : entries_) {
        if (var == v) {
            if (role != r)
                throw std::invalid_argument("variable '" + v.name() + "' already registered as " +
                                            std::string(role_name(role)));
            return;
        }
    }
    entries_.emplace_back(v, r);
}

std::optional<Role> VarRegistry::role(Var v) const {
    for (auto& [var, role] : entries_)
        if (var == v) return role;
    return std::nullopt;
}

std::vector<Var> VarRegistry::with_role(Role r) const {
    std::vector<Var> out;
    for (auto& [var, role] : entries_)
        if (role == r) out.push_back(var);
    return out;
}

} // namespace ratode
