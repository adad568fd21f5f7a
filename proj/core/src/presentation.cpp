#include "forge/presentation.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include "forge/errors.hpp"

namespace forge {

  RelatorSet::RelatorSet(Alphabet alphabet, std::vector<Word> relators)
      : alphabet_(std::move(alphabet)), relators_(std::move(relators)) {
    std::unordered_set<Word> seen;
    for (std::size_t i = 0; i < relators_.size(); ++i) {
      Word const& r = relators_[i];
      check_alphabet(alphabet_, r);
      if (r.empty()) {
        throw InvalidInput("relator " + std::to_string(i) + " is trivial");
      }
      if (!r.is_cyclically_reduced()) {
        throw InvalidInput("relator " + std::to_string(i)
                           + " is not cyclically reduced");
      }
      if (!seen.insert(r).second) {
        throw InvalidInput("relator " + std::to_string(i) + " is a duplicate");
      }
    }
  }

  RelatorSet RelatorSet::merged(std::span<Word const> more) const {
    std::vector<Word> out = relators_;
    std::unordered_set<Word> seen(out.begin(), out.end());
    for (auto const& r : more) {
      if (seen.insert(r).second) {
        out.push_back(r);
      }
    }
    return RelatorSet(alphabet_, std::move(out));
  }

  RelatorSet Presentation::relator_set() const {
    std::vector<Word> out;
    std::unordered_set<Word> seen;
    for (auto const& r : relators) {
      Word c = cyclic_reduce(r).word;
      if (!c.empty() && seen.insert(c).second) {
        out.push_back(std::move(c));
      }
    }
    return RelatorSet(alphabet, std::move(out));
  }

  Presentation parse_presentation(std::string_view text) {
    Presentation p;
    bool have_gens = false;
    std::vector<std::pair<std::size_t, std::string>> pending;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) {
        end = text.size();
      }
      ++line_no;
      std::string line(text.substr(start, end - start));
      start = end + 1;
      if (auto hash = line.find('#'); hash != std::string::npos) {
        line.erase(hash);
      }
      std::istringstream in(line);
      std::string key;
      if (!(in >> key)) {
        continue;
      }
      std::string rest;
      std::getline(in, rest);
      if (key == "gens:") {
        if (have_gens) {
          throw ParseError("duplicate gens line", line_no);
        }
        std::istringstream names_in(rest);
        std::vector<std::string> names;
        for (std::string n; names_in >> n;) {
          names.push_back(n);
        }
        p.alphabet = Alphabet(std::move(names));
        have_gens = true;
      } else if (key == "rel:") {
        pending.emplace_back(line_no, rest);
      } else {
        throw ParseError("unknown directive '" + key + "' on line "
                             + std::to_string(line_no),
                         line_no);
      }
    }
    if (!have_gens) {
      throw ParseError("missing gens line", 0);
    }
    for (auto const& [no, body] : pending) {
      p.relators.push_back(parse_word(body, p.alphabet));
    }
    return p;
  }

  Presentation load_presentation(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw InvalidInput("cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_presentation(buf.str());
  }

  std::string format_presentation(Presentation const& p) {
    std::string out = "gens:";
    for (auto const& n : p.alphabet.names()) {
      out += ' ';
      out += n;
    }
    out += '\n';
    for (auto const& r : p.relators) {
      out += "rel: " + to_string(r, p.alphabet) + '\n';
    }
    return out;
  }

  Word substitute(Word const& w, std::span<Word const> images) {
    Word out;
    for (Letter l : w.letters()) {
      std::size_t const g = generator_of(l);
      if (g >= images.size()) {
        throw InvalidInput("no image for generator " + std::to_string(g));
      }
      out *= is_inverted(l) ? images[g].inverse() : images[g];
    }
    return out;
  }

}  // namespace forge
