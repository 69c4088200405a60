#include "tileperiod/search.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace tileperiod {

namespace {

int floor_mod(int v, int m) {
    int r = v % m;
    return r < 0 ? r + m : r;
}

} // namespace

CompiledSystem::CompiledSystem(const TilingSystem& sys) : sys_(&sys) {
    const std::size_t n = sys.tiles.size();
    std::vector<std::vector<TileMask>> layer_masks(sys.layers.size());
    for (std::size_t l = 0; l < sys.layers.size(); ++l) {
        layer_masks[l].assign(sys.layers[l].labels.size(), TileMask(n));
    }
    for (const auto& t : sys.tiles) {
        for (std::size_t l = 0; l < t.layers.size() && l < layer_masks.size(); ++l) {
            if (t.layers[l] < layer_masks[l].size()) {
                layer_masks[l][t.layers[l]].set(t.id);
            }
        }
    }
    for (const auto& p : sys.forbidden) {
        std::map<std::pair<int, int>, TileMask> by_offset;
        for (const auto& c : p.cells()) {
            TileMask m(n);
            if (c.layer < 0) {
                if (c.tile < n) {
                    m.set(c.tile);
                }
            } else if (static_cast<std::size_t>(c.layer) < layer_masks.size() &&
                       c.tile < layer_masks[static_cast<std::size_t>(c.layer)].size()) {
                m = layer_masks[static_cast<std::size_t>(c.layer)][c.tile];
            }
            auto [it, inserted] = by_offset.try_emplace({c.dx, c.dy}, m);
            if (!inserted) {
                it->second &= m;
            }
        }
        MaskedPattern mp;
        bool satisfiable = !by_offset.empty();
        for (auto& [off, m] : by_offset) {
            if (m.none()) {
                satisfiable = false;
                break;
            }
            mp.push_back({off.first, off.second, std::move(m)});
        }
        if (satisfiable) {
            patterns_.push_back(std::move(mp));
        }
    }
}

TileMask CompiledSystem::full() const {
    TileMask m(tile_count());
    m.set();
    return m;
}

std::vector<MaskedPattern> CompiledSystem::reduced(std::optional<int> px, std::optional<int> py) const {
    std::vector<MaskedPattern> out;
    out.reserve(patterns_.size());
    for (const auto& p : patterns_) {
        std::map<std::pair<int, int>, TileMask> cells;
        bool ok = true;
        for (const auto& c : p) {
            const int x = px ? floor_mod(c.dx, *px) : c.dx;
            const int y = py ? floor_mod(c.dy, *py) : c.dy;
            auto [it, inserted] = cells.try_emplace({y, x}, c.mask);
            if (!inserted) {
                it->second &= c.mask;
                if (it->second.none()) {
                    ok = false;
                    break;
                }
            }
        }
        if (!ok) {
            continue;
        }
        MaskedPattern mp;
        for (auto& [yx, m] : cells) {
            mp.push_back({yx.second, yx.first, std::move(m)});
        }
        out.push_back(std::move(mp));
    }
    return out;
}

struct RegionSearch::Impl {
    struct PairClass {
        std::vector<std::pair<const TileMask*, const TileMask*>> members; // (other, trigger)
        std::vector<std::unique_ptr<TileMask>> cache;
    };
    struct PairLink {
        std::uint32_t other;
        std::uint32_t cls;
        auto operator<=>(const PairLink&) const = default;
    };
    struct GeneralOcc {
        std::vector<std::pair<std::uint32_t, const TileMask*>> others;
        const TileMask* trigger;
    };

    const CompiledSystem* cs;
    int w;
    int h;
    SearchOptions options;
    std::size_t n;
    std::vector<MaskedPattern> patterns;
    std::vector<TileMask> base_domain;
    std::vector<TileMask> domain;
    std::vector<PairClass> classes;
    std::vector<std::vector<PairLink>> links;
    std::vector<std::vector<GeneralOcc>> general;
    std::uint64_t nodes = 0;
    bool wrap_x;
    bool wrap_y;

    Impl(const CompiledSystem& c, int width, int height, bool wx, bool wy, SearchOptions opt)
        : cs(&c), w(width), h(height), options(opt), n(c.tile_count()), wrap_x(wx), wrap_y(wy) {
        if (w <= 0 || h <= 0) {
            throw InvalidDimensions("search region extents must be positive");
        }
        const std::size_t ncell = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
        patterns = c.reduced(wx ? std::optional(w) : std::nullopt, wy ? std::optional(h) : std::nullopt);
        base_domain.assign(ncell, c.full());
        links.resize(ncell);
        general.resize(ncell);

        std::map<std::tuple<int, int, int>, std::uint32_t> class_ids;
        for (const auto& p : patterns) {
            int pw = 0;
            int ph = 0;
            for (const auto& cell : p) {
                pw = std::max(pw, cell.dx + 1);
                ph = std::max(ph, cell.dy + 1);
            }
            const int xs = wx ? w : w - pw + 1;
            const int ys = wy ? h : h - ph + 1;
            for (int y = 0; y < ys; ++y) {
                for (int x = 0; x < xs; ++x) {
                    auto cell_of = [&](const MaskedCell& mc) {
                        const int cx = wx ? (x + mc.dx) % w : x + mc.dx;
                        const int cy = wy ? (y + mc.dy) % h : y + mc.dy;
                        return static_cast<std::uint32_t>(cy * w + cx);
                    };
                    if (p.size() == 1) {
                        base_domain[cell_of(p[0])] -= p[0].mask;
                    } else if (p.size() == 2) {
                        const auto c0 = cell_of(p[0]);
                        const auto c1 = cell_of(p[1]);
                        const int role = c1 > c0 ? 1 : 0;
                        const auto key = std::make_tuple(p[1].dx - p[0].dx, p[1].dy - p[0].dy, role);
                        auto [it, inserted] = class_ids.try_emplace(key, static_cast<std::uint32_t>(classes.size()));
                        if (inserted) {
                            classes.emplace_back();
                        }
                        (void)it;
                        const auto trig = role == 1 ? c1 : c0;
                        const auto other = role == 1 ? c0 : c1;
                        links[trig].push_back({other, it->second});
                    } else {
                        GeneralOcc occ;
                        std::uint32_t trig = 0;
                        const TileMask* trig_mask = nullptr;
                        for (const auto& mc : p) {
                            const auto ci = cell_of(mc);
                            if (trig_mask == nullptr || ci > trig) {
                                if (trig_mask != nullptr) {
                                    occ.others.push_back({trig, trig_mask});
                                }
                                trig = ci;
                                trig_mask = &mc.mask;
                            } else {
                                occ.others.push_back({ci, &mc.mask});
                            }
                        }
                        occ.trigger = trig_mask;
                        general[trig].push_back(std::move(occ));
                    }
                }
            }
            if (p.size() == 2) {
                // Register the pattern's masks with both orientations it may take.
                for (int role = 0; role < 2; ++role) {
                    const auto key = std::make_tuple(p[1].dx - p[0].dx, p[1].dy - p[0].dy, role);
                    auto it = class_ids.find(key);
                    if (it == class_ids.end()) {
                        continue;
                    }
                    auto& cls = classes[it->second];
                    if (role == 1) {
                        cls.members.push_back({&p[0].mask, &p[1].mask});
                    } else {
                        cls.members.push_back({&p[1].mask, &p[0].mask});
                    }
                }
            }
        }
        for (auto& cls : classes) {
            cls.cache.resize(n);
        }
        for (auto& l : links) {
            std::sort(l.begin(), l.end());
            l.erase(std::unique(l.begin(), l.end()), l.end());
        }
        domain = base_domain;
    }

    const TileMask& table(std::uint32_t cls_id, TileId other) {
        auto& cls = classes[cls_id];
        auto& slot = cls.cache[other];
        if (!slot) {
            slot = std::make_unique<TileMask>(n);
            for (const auto& [o, t] : cls.members) {
                if (o->test(other)) {
                    *slot |= *t;
                }
            }
        }
        return *slot;
    }

    std::uint64_t run(const std::function<bool(const RegionAssignment&)>& visit) {
        const std::size_t ncell = domain.size();
        for (const auto& d : domain) {
            if (d.none()) {
                return 0;
            }
        }
        RegionAssignment cur(w, h, wrap_x, wrap_y);
        std::vector<TileMask> cand(ncell);
        std::vector<std::size_t> pos(ncell, TileMask::npos);
        auto compute = [&](std::size_t i) {
            cand[i] = domain[i];
            for (const auto& link : links[i]) {
                cand[i] -= table(link.cls, cur.cells[link.other]);
            }
            for (const auto& occ : general[i]) {
                bool hit = true;
                for (const auto& [ci, m] : occ.others) {
                    if (!m->test(cur.cells[ci])) {
                        hit = false;
                        break;
                    }
                }
                if (hit) {
                    cand[i] -= *occ.trigger;
                }
            }
            pos[i] = cand[i].find_first();
        };

        std::uint64_t found = 0;
        std::size_t i = 0;
        compute(0);
        while (true) {
            if (pos[i] == TileMask::npos) {
                if (i == 0) {
                    return found;
                }
                --i;
                pos[i] = cand[i].find_next(pos[i]);
                continue;
            }
            cur.cells[i] = static_cast<TileId>(pos[i]);
            if (++nodes > options.node_budget) {
                throw ResourceLimit("region search exceeded " + std::to_string(options.node_budget) + " nodes");
            }
            if (i + 1 == ncell) {
                ++found;
                if (!visit(cur)) {
                    return found;
                }
                pos[i] = cand[i].find_next(pos[i]);
                continue;
            }
            ++i;
            compute(i);
        }
    }
};

RegionSearch::RegionSearch(const CompiledSystem& compiled, int width, int height, bool wrap_x, bool wrap_y,
                           SearchOptions options)
    : impl_(std::make_unique<Impl>(compiled, width, height, wrap_x, wrap_y, options)) {}

RegionSearch::~RegionSearch() = default;
RegionSearch::RegionSearch(RegionSearch&&) noexcept = default;
RegionSearch& RegionSearch::operator=(RegionSearch&&) noexcept = default;

int RegionSearch::width() const { return impl_->w; }
int RegionSearch::height() const { return impl_->h; }

void RegionSearch::restrict_cell(int x, int y, const TileMask& allowed) {
    impl_->domain[static_cast<std::size_t>(y * impl_->w + x)] &= allowed;
}

void RegionSearch::fix_cell(int x, int y, TileId t) {
    TileMask m(impl_->n);
    if (t < impl_->n) {
        m.set(t);
    }
    restrict_cell(x, y, m);
}

void RegionSearch::reset_domains() { impl_->domain = impl_->base_domain; }

std::uint64_t RegionSearch::enumerate(const std::function<bool(const RegionAssignment&)>& visit) {
    return impl_->run(visit);
}

std::optional<RegionAssignment> RegionSearch::first() {
    std::optional<RegionAssignment> out;
    impl_->run([&](const RegionAssignment& r) {
        out = r;
        return false;
    });
    return out;
}

std::uint64_t RegionSearch::nodes() const { return impl_->nodes; }

} // namespace tileperiod
