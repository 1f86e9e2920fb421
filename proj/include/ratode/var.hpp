#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ratode {

// Interned variable handle. Variables are ordered by interning id; a lower id
// is a *larger* variable in the monomial order. A fixed set of names is
// interned at startup so canonical forms do not depend on call order.
class Var {
public:
    Var() = default;

    static Var named(std::string_view name);
    static std::optional<Var> find(std::string_view name);
    static Var from_id(std::uint32_t id) { return Var(id); }

    std::uint32_t id() const { return id_; }
    const std::string& name() const;

    friend bool operator==(Var, Var) = default;
    friend auto operator<=>(Var, Var) = default;

private:
    explicit Var(std::uint32_t id) : id_(id) {}
    std::uint32_t id_ = 0;
};

namespace vars {
Var x();      // independent variable of solutions
Var c();      // arbitrary constant of a solution family
Var t();      // curve parameter
Var s();      // second curve parameter (tracing index, characteristic system)
Var w();      // unknown of the associated equation
Var wp();     // dw/df for the single-coefficient associated equation
Var y();
Var z();      // stands for y'
Var delta();  // the quadratic-extension generator
Var k();      // shift unknown used when comparing solution families
} // namespace vars

// Names that user input may not declare.
bool is_reserved_name(std::string_view name);

enum class Role {
    ConstantParam,
    FunctionalCoeff,
    CurveVar,
    CurveParam,
    SolutionVar,
    UnknownW,
    ConstantC,
};

std::string_view role_name(Role r);

// Role assignment for one problem. Roles are fixed once registered.
class VarRegistry {
public:
    void add(Var v, Role r);
    std::optional<Role> role(Var v) const;
    bool contains(Var v) const { return role(v).has_value(); }
    std::vector<Var> with_role(Role r) const;
    const std::vector<std::pair<Var, Role>>& entries() const { return entries_; }

private:
    std::vector<std::pair<Var, Role>> entries_;
};

} // namespace ratode
