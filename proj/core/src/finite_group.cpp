#include "forge/finite_group.hpp"

#include <array>
#include <fstream>
#include <sstream>

#include "forge/errors.hpp"

namespace forge {

  FiniteGroup::FiniteGroup(std::vector<std::vector<std::size_t>> table) : table_(std::move(table)) {
    std::size_t const n = table_.size();
    if (n == 0) {
      throw InvalidInput("a group has at least one element");
    }
    for (auto const& row : table_) {
      if (row.size() != n) {
        throw InvalidInput("multiplication table is not square");
      }
      for (std::size_t v : row) {
        if (v >= n) {
          throw InvalidInput("multiplication table entry out of range");
        }
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      if (table_[0][a] != a || table_[a][0] != a) {
        throw InvalidInput("element 0 is not the identity");
      }
    }
    inverse_.assign(n, n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (table_[a][b] == 0 && table_[b][a] == 0) {
          inverse_[a] = b;
          break;
        }
      }
      if (inverse_[a] == n) {
        throw InvalidInput("element " + std::to_string(a) + " has no inverse");
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t c = 0; c < n; ++c) {
          if (table_[table_[a][b]][c] != table_[a][table_[b][c]]) {
            throw InvalidInput("multiplication table is not associative");
          }
        }
      }
    }
  }

  FiniteGroup FiniteGroup::cyclic(std::size_t n) {
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        t[a][b] = (a + b) % n;
      }
    }
    return FiniteGroup(std::move(t));
  }

  FiniteGroup FiniteGroup::symmetric3() {
    // Permutations of {0,1,2} as images of (0,1,2); index 0 is the identity.
    std::vector<std::array<std::size_t, 3>> const perms{
        {0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
    auto index_of = [&](std::array<std::size_t, 3> const& p) {
      for (std::size_t i = 0; i < perms.size(); ++i) {
        if (perms[i] == p) {
          return i;
        }
      }
      return perms.size();
    };
    std::vector<std::vector<std::size_t>> t(6, std::vector<std::size_t>(6));
    for (std::size_t a = 0; a < 6; ++a) {
      for (std::size_t b = 0; b < 6; ++b) {
        // (a*b)(k) = a(b(k))
        std::array<std::size_t, 3> c{};
        for (std::size_t k = 0; k < 3; ++k) {
          c[k] = perms[a][perms[b][k]];
        }
        t[a][b] = index_of(c);
      }
    }
    return FiniteGroup(std::move(t));
  }

  FiniteGroup FiniteGroup::direct_product(FiniteGroup const& a, FiniteGroup const& b) {
    std::size_t const m = b.order();
    std::size_t const n = a.order() * m;
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        t[x][y] = a.multiply(x / m, y / m) * m + b.multiply(x % m, y % m);
      }
    }
    return FiniteGroup(std::move(t));
  }

  std::size_t FiniteGroup::evaluate(Word const& w, std::span<std::size_t const> values) const {
    std::size_t acc = 0;
    for (Letter l : w.letters()) {
      std::size_t const g = generator_of(l);
      if (g >= values.size()) {
        throw InvalidInput("no value for generator " + std::to_string(g));
      }
      std::size_t const v = is_inverted(l) ? inverse_[values[g]] : values[g];
      acc = table_[acc][v];
    }
    return acc;
  }

  FiniteGroup parse_finite_group(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::size_t n = 0;
    if (!(in >> n) || n == 0) {
      throw ParseError("expected the group order", 0);
    }
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (!(in >> t[i][j])) {
          throw ParseError("multiplication table truncated", i * n + j + 1);
        }
      }
    }
    std::string extra;
    if (in >> extra) {
      throw ParseError("trailing data after multiplication table", n * n + 1);
    }
    return FiniteGroup(std::move(t));
  }

  FiniteGroup load_finite_group(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw InvalidInput("cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_finite_group(buf.str());
  }

  std::string format_finite_group(FiniteGroup const& g) {
    std::string out = std::to_string(g.order()) + '\n';
    for (auto const& row : g.table()) {
      for (std::size_t j = 0; j < row.size(); ++j) {
        out += (j ? " " : "") + std::to_string(row[j]);
      }
      out += '\n';
    }
    return out;
  }

  std::vector<std::pair<std::string, FiniteGroup>> small_group_battery() {
    std::vector<std::pair<std::string, FiniteGroup>> out;
    out.emplace_back("1", FiniteGroup::cyclic(1));
    out.emplace_back("Z2", FiniteGroup::cyclic(2));
    out.emplace_back("Z3", FiniteGroup::cyclic(3));
    out.emplace_back("Z4", FiniteGroup::cyclic(4));
    out.emplace_back("Z2xZ2", FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)));
    out.emplace_back("Z5", FiniteGroup::cyclic(5));
    out.emplace_back("Z6", FiniteGroup::cyclic(6));
    out.emplace_back("S3", FiniteGroup::symmetric3());
    return out;
  }

}  // namespace forge
