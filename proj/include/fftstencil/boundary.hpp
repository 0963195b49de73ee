#pragma once

#include <unordered_map>

#include <Eigen/Core>

#include "fftstencil/grid.hpp"

namespace fftstencil {

/// Time-invariant Dirichlet rule for the cells at boundary distance <= sigma.
/// Either one constant per field, or a per-(cell, field) profile table.
class BoundaryRule {
public:
    enum class Kind { DirichletConstant, DirichletProfile };

    static BoundaryRule dirichlet(Eigen::VectorXd per_field) {
        if (per_field.size() < 1)
            throw SpecError("BoundaryRule: need at least one field value");
        BoundaryRule r;
        r.kind_ = Kind::DirichletConstant;
        r.constant_ = std::move(per_field);
        return r;
    }

    static BoundaryRule dirichlet(double value, int fields = 1) {
        return dirichlet(Eigen::VectorXd::Constant(fields, value));
    }

    /// Profile keys are cell * fields + field.
    static BoundaryRule dirichlet_profile(std::unordered_map<Index, double> table) {
        BoundaryRule r;
        r.kind_ = Kind::DirichletProfile;
        r.profile_ = std::move(table);
        return r;
    }

    Kind kind() const { return kind_; }

    double value(const GridShape& shape, Index cell, int field) const {
        if (kind_ == Kind::DirichletConstant) {
            if (constant_.size() != shape.fields())
                throw SpecError("BoundaryRule: constant has wrong number of fields");
            return constant_[field];
        }
        auto it = profile_.find(cell * shape.fields() + field);
        if (it == profile_.end())
            throw SpecError("BoundaryRule: profile has no entry for a boundary cell");
        return it->second;
    }

private:
    BoundaryRule() = default;
    Kind kind_ = Kind::DirichletConstant;
    Eigen::VectorXd constant_;
    std::unordered_map<Index, double> profile_;
};

} // namespace fftstencil
