#include "carpentry/design_space.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace carpentry {

std::vector<Joint> detect_joints(const std::vector<Part>& parts, const std::vector<Adjacency>& adjacency)
{
    const auto known = [&](const std::string& id) {
        return std::any_of(parts.begin(), parts.end(), [&](const Part& p) { return p.id == id; });
    };
    std::vector<Joint> joints;
    std::set<std::string> joint_ids;
    for (const auto& adj : adjacency) {
        if (!known(adj.part_a) || !known(adj.part_b)) {
            throw InputError("joint '" + adj.joint_id + "' references unknown part");
        }
        if (adj.part_a == adj.part_b) {
            throw InputError("joint '" + adj.joint_id + "' joins part '" + adj.part_a + "' to itself");
        }
        if (adj.variants.empty()) {
            throw InputError("joint '" + adj.joint_id + "' declares no connector variants");
        }
        std::set<std::string> ids;
        for (const auto& v : adj.variants) {
            if (!ids.insert(v.id).second) {
                throw InputError("joint '" + adj.joint_id + "' has duplicate variant '" + v.id + "'");
            }
        }
        if (!joint_ids.insert(adj.joint_id).second) {
            throw InputError("duplicate joint id '" + adj.joint_id + "'");
        }
        joints.push_back(Joint{adj.joint_id, adj.part_a, adj.part_b, adj.variants});
    }
    return joints;
}

DesignSpace::DesignSpace(std::string base_id, std::vector<Part> parts, std::vector<Joint> joints)
    : id_(std::move(base_id)), parts_(std::move(parts)), joints_(std::move(joints))
{
    std::vector<Adjacency> check;
    for (const auto& j : joints_) check.push_back({j.id, j.part_a, j.part_b, j.variants});
    detect_joints(parts_, check);
}

BigCount DesignSpace::cardinality() const
{
    BigCount n = 1;
    for (const auto& j : joints_) n *= j.variants.size();
    return n;
}

std::string DesignSpace::design_id(const Selection& selection) const
{
    if (selection.empty()) return id_;
    std::string out = id_ + "@";
    for (std::size_t i = 0; i < selection.size(); ++i) {
        if (i) out += '.';
        out += std::to_string(selection[i]);
    }
    return out;
}

namespace {

void apply_delta(Part& part, Length delta, Axis axis)
{
    if (part.shape.is_sheet() && axis == Axis::Y) {
        part.shape.y += delta;
    } else {
        part.shape.x += delta;
    }
}

} // namespace

std::optional<Design> DesignSpace::instantiate(const Selection& selection, std::string* why) const
{
    if (selection.size() != joints_.size()) {
        throw std::invalid_argument("selection size does not match joint count");
    }
    Design d;
    d.id = design_id(selection);
    d.parts = parts_;
    for (std::size_t i = 0; i < joints_.size(); ++i) {
        const auto& joint = joints_[i];
        if (selection[i] >= joint.variants.size()) {
            throw std::invalid_argument("variant index out of range for joint '" + joint.id + "'");
        }
        const auto& v = joint.variants[selection[i]];
        for (auto& p : d.parts) {
            if (p.id == joint.part_a) apply_delta(p, v.delta_a, v.axis_a);
            if (p.id == joint.part_b) apply_delta(p, v.delta_b, v.axis_b);
        }
        d.provenance[joint.id] = v.id;
    }
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        const auto& shape = d.parts[i].shape;
        if (shape.x.ticks <= 0 || (parts_[i].shape.is_sheet() && shape.y.ticks <= 0)) {
            if (why) *why = "part '" + d.parts[i].id + "' dimension becomes non-positive";
            return std::nullopt;
        }
    }
    return d;
}

Design DesignSpace::base_design() const
{
    std::string why;
    auto d = instantiate(Selection(joints_.size(), 0), &why);
    if (!d) throw InputError("base design is invalid: " + why);
    return *d;
}

Enumeration enumerate_variants(const DesignSpace& space, std::size_t limit)
{
    if (limit == 0) throw std::invalid_argument("enumeration limit must be >= 1");
    Enumeration out;
    const auto& joints = space.joints();
    Selection sel(joints.size(), 0);
    while (true) {
        std::string why;
        if (auto d = space.instantiate(sel, &why)) {
            out.designs.push_back(std::move(*d));
            if (out.designs.size() >= limit) break;
        } else {
            out.skipped.push_back({space.design_id(sel), why});
        }
        // Odometer increment, last joint fastest.
        std::size_t i = sel.size();
        while (i > 0) {
            --i;
            if (++sel[i] < joints[i].variants.size()) break;
            sel[i] = 0;
            if (i == 0) return out;
        }
        if (sel.empty()) break;
    }
    return out;
}

Design sample_design(const DesignSpace& space, Rng& rng)
{
    constexpr int kMaxAttempts = 256;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        Selection sel;
        sel.reserve(space.joints().size());
        for (const auto& j : space.joints()) sel.push_back(uniform_index(rng, j.variants.size()));
        if (auto d = space.instantiate(sel)) return *d;
    }
    return space.base_design();
}

} // namespace carpentry
