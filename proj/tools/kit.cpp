#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cipherkit/bashs3.hpp"
#include "cipherkit/classical.hpp"
#include "cipherkit/designs.hpp"
#include "cipherkit/elementary.hpp"
#include "cipherkit/fnv.hpp"
#include "cipherkit/metricsets.hpp"
#include "cipherkit/qcircuit.hpp"
#include "cipherkit/twinpeaks2.hpp"

#ifndef CIPHERKIT_DATA_DIR
#define CIPHERKIT_DATA_DIR "data"
#endif

using json = nlohmann::json;
using namespace cipherkit;

namespace {

enum Exit { ok = 0, negative = 1, usage = 2, over_budget = 3 };

struct Settings {
    std::string format = "text";
    std::uint64_t seed = 1;
    std::uint64_t max_work = 1'000'000'000;
};

// Collects the result of one subcommand as JSON plus text lines.
class Report {
public:
    void line(const std::string& s) { text_.push_back(s); }
    json& data() { return data_; }
    int code = ok;

    void print(const Settings& st) const
    {
        if (st.format == "json") {
            json out = data_;
            out["exit"] = code;
            std::cout << out.dump() << '\n';
        } else {
            for (const auto& s : text_)
                std::cout << s << '\n';
        }
    }

private:
    json data_ = json::object();
    std::vector<std::string> text_;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw format_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        out.push_back(cur);
    return out;
}

void require_work(const Settings& st, double estimate, const std::string& what)
{
    if (estimate > static_cast<double>(st.max_work)) {
        std::ostringstream os;
        os << what << " needs about " << estimate << " steps, above --max-work " << st.max_work;
        throw resource_error(os.str());
    }
}

// Rotor or reflector argument: a name from wirings.txt, 26 letters, or a file.
std::string wiring_arg(const std::string& arg)
{
    std::ifstream names(CIPHERKIT_DATA_DIR "/wirings.txt");
    std::string line;
    while (std::getline(names, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream ls(line);
        std::string name, wiring;
        ls >> name >> wiring;
        if (name == arg)
            return wiring;
    }
    if (normalize_letters(arg).size() == 26 && arg.size() == 26)
        return arg;
    return normalize_letters(read_file(arg));
}

Circuit load_circuit(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw format_error("cannot open " + path);
    return Circuit::parse(in);
}

BitMatrix load_matrix(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw format_error("cannot open " + path);
    return BitMatrix::parse(in);
}

std::vector<std::size_t> to_one_based(const std::vector<std::size_t>& v)
{
    std::vector<std::size_t> out;
    for (auto x : v)
        out.push_back(x + 1);
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"kit: toolkit for small cryptographic constructions and attacks"};
    app.require_subcommand(1);
    Settings st;
    app.add_option("--format", st.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--seed", st.seed, "Seed for randomized searches");
    app.add_option("--max-work", st.max_work, "Work cap for exhaustive operations");

    Report rep;
    std::function<void()> action;

    // sig-check
    std::string sig_value;
    auto* sig = app.add_subcommand("sig-check", "Can a number be the digit sum of a perfect square?");
    sig->add_option("number", sig_value)->required();
    sig->callback([&] {
        action = [&] {
            const auto v = signature_plausible(sig_value);
            rep.data() = {{"number", sig_value}, {"verdict", to_string(v)}};
            rep.line(to_string(v));
            rep.code = v == Verdict::impossible ? negative : ok;
        };
    });

    // knapsack
    auto* knap = app.add_subcommand("knapsack", "Superincreasing knapsack");
    knap->require_subcommand(1);
    std::size_t knap_n = 0;
    std::string knap_arg;
    auto* knap_enc = knap->add_subcommand("enc", "Encrypt a bit string");
    knap_enc->add_option("--n", knap_n)->required();
    knap_enc->add_option("bits", knap_arg)->required();
    knap_enc->callback([&] {
        action = [&] {
            const auto y = knapsack_encrypt(KnapsackKey(knap_n), BitVec::from_string(knap_arg));
            rep.data() = {{"n", knap_n}, {"message", knap_arg}, {"ciphertext", y.get_str()}};
            rep.line(y.get_str());
        };
    });
    auto* knap_dec = knap->add_subcommand("dec", "Decrypt a value");
    knap_dec->add_option("--n", knap_n)->required();
    knap_dec->add_option("value", knap_arg)->required();
    knap_dec->callback([&] {
        action = [&] {
            mpz_class y;
            if (y.set_str(knap_arg, 10) != 0)
                throw format_error("not a decimal integer: " + knap_arg);
            const auto x = knapsack_decrypt(KnapsackKey(knap_n), y);
            rep.data() = {{"n", knap_n}, {"ciphertext", knap_arg}, {"message", x.to_string()}};
            rep.line(x.to_string());
        };
    });

    // sbox
    auto* sbox = app.add_subcommand("sbox", "S-box statistics");
    sbox->require_subcommand(1);
    std::string sbox_table;
    auto* sbox_count = sbox->add_subcommand("count2", "Count (a, b) with exactly two solutions of S(x) + S(x + a) = b");
    sbox_count->add_option("--table", sbox_table, "File of hex entries")->required();
    sbox_count->callback([&] {
        action = [&] {
            std::ifstream in(sbox_table);
            if (!in)
                throw format_error("cannot open " + sbox_table);
            const auto s = SboxTable::parse_hex(in);
            require_work(st, std::ldexp(1.0, static_cast<int>(2 * s.bits)), "pair count");
            const auto c = count_two_solution_pairs(s);
            rep.data() = {{"bits", s.bits}, {"count", c}};
            rep.line(std::to_string(c));
        };
    });

    // qc
    auto* qc = app.add_subcommand("qc", "Reversible 4-wire circuits");
    qc->require_subcommand(1);
    std::string qc_circuit = CIPHERKIT_DATA_DIR "/circuit_f.qc";
    std::string qc_input, qc_p, qc_c;
    auto* qc_eval = qc->add_subcommand("eval", "Run the circuit on one input");
    qc_eval->add_option("--circuit", qc_circuit);
    qc_eval->add_option("--input", qc_input)->required();
    qc_eval->callback([&] {
        action = [&] {
            const auto out = run_circuit(load_circuit(qc_circuit), BitVec::from_string(qc_input));
            rep.data() = {{"input", qc_input}, {"output", out.to_string()}};
            rep.line(out.to_string());
        };
    });
    auto* qc_anf = qc->add_subcommand("anf", "Algebraic normal forms of the output coordinates");
    qc_anf->add_option("--circuit", qc_circuit);
    qc_anf->callback([&] {
        action = [&] {
            const auto f = anf(truth_table(load_circuit(qc_circuit)));
            json arr = json::array();
            for (std::size_t j = 0; j < f.size(); ++j) {
                arr.push_back(anf_to_string(f[j]));
                rep.line("f" + std::to_string(j + 1) + " = " + anf_to_string(f[j]));
            }
            rep.data() = {{"anf", arr}};
        };
    });
    auto* qc_key = qc->add_subcommand("recover-key", "K = C + (F(P1..4), ..., F(P13..16))");
    qc_key->add_option("--circuit", qc_circuit);
    qc_key->add_option("--p", qc_p)->required();
    qc_key->add_option("--c", qc_c)->required();
    qc_key->callback([&] {
        action = [&] {
            const auto k = recover_key(truth_table(load_circuit(qc_circuit)), BitVec::from_string(qc_p),
                                       BitVec::from_string(qc_c));
            rep.data() = {{"key", k.to_string()}};
            rep.line(k.to_string());
        };
    });

    // vigenere
    auto* vig = app.add_subcommand("vigenere", "Vigenere cipher");
    vig->require_subcommand(1);
    std::string vig_key, vig_text;
    auto* vig_dec = vig->add_subcommand("dec", "Decrypt");
    vig_dec->add_option("--key", vig_key)->required();
    vig_dec->add_option("ciphertext", vig_text)->required();
    vig_dec->callback([&] {
        action = [&] {
            const auto p = vigenere_decrypt(VigenereKey(vig_key), vig_text);
            rep.data() = {{"plaintext", p}};
            rep.line(p);
        };
    });
    auto* vig_enc = vig->add_subcommand("enc", "Encrypt");
    vig_enc->add_option("--key", vig_key)->required();
    vig_enc->add_option("plaintext", vig_text)->required();
    vig_enc->callback([&] {
        action = [&] {
            const auto c = vigenere_encrypt(VigenereKey(vig_key), vig_text);
            rep.data() = {{"ciphertext", c}};
            rep.line(c);
        };
    });

    // enigma
    auto* eni = app.add_subcommand("enigma", "Three-rotor Enigma without plugboard");
    eni->require_subcommand(1);
    std::string eni_rotors, eni_reflector = "B", eni_positions = "0,0,0", eni_text;
    auto* eni_enc = eni->add_subcommand("encrypt", "Encrypt (and decrypt) letters");
    eni_enc->add_option("--rotors", eni_rotors, "left,middle,right: names, wirings or files")->required();
    eni_enc->add_option("--reflector", eni_reflector);
    eni_enc->add_option("--positions", eni_positions, "left,middle,right start positions");
    eni_enc->add_option("text", eni_text)->required();
    eni_enc->callback([&] {
        action = [&] {
            const auto r = split(eni_rotors, ',');
            const auto p = split(eni_positions, ',');
            if (r.size() != 3 || p.size() != 3)
                throw format_error("expected three comma-separated rotors and positions");
            Odometer start{std::stoi(p[0]) % 26, std::stoi(p[1]) % 26, std::stoi(p[2]) % 26};
            EnigmaMachine m(Rotor(wiring_arg(r[0])), Rotor(wiring_arg(r[1])), Rotor(wiring_arg(r[2])),
                            Reflector(wiring_arg(eni_reflector)), start);
            const auto out = m.encrypt(normalize_letters(eni_text));
            rep.data() = {{"output", out}};
            rep.line(out);
        };
    });
    std::string eni_corpus, eni_ct, eni_rotor = "I";
    double eni_fraction = 1.0;
    std::size_t eni_show = 5;
    auto* eni_attack = eni->add_subcommand("attack", "Locate a known-source plaintext in a corpus");
    eni_attack->add_option("--corpus", eni_corpus)->required();
    eni_attack->add_option("--ct", eni_ct)->required();
    eni_attack->add_option("--rotor", eni_rotor, "Right rotor: name, wiring or file");
    eni_attack->add_option("--min-fraction", eni_fraction, "Fraction of repeat constraints that must hold")
        ->check(CLI::Range(0.0, 1.0));
    eni_attack->add_option("--show", eni_show, "Candidates to print");
    eni_attack->callback([&] {
        action = [&] {
            const auto ct = normalize_letters(read_file(eni_ct));
            const auto corpus = normalize_letters(read_file(eni_corpus));
            require_work(st, static_cast<double>(corpus.size()) * static_cast<double>(ct.size()), "corpus scan");
            const Rotor right(wiring_arg(eni_rotor));
            const auto found = corpus_attack(ct, corpus, block_constraints(right, ct), AttackOptions{eni_fraction});
            json arr = json::array();
            rep.line("candidates: " + std::to_string(found.size()));
            for (std::size_t i = 0; i < found.size() && i < eni_show; ++i) {
                const auto& c = found[i];
                const auto excerpt = corpus.substr(c.offset, std::min<std::size_t>(60, ct.size()));
                arr.push_back({{"offset", c.offset}, {"satisfied", c.satisfied}, {"total", c.total}, {"excerpt", excerpt}});
                rep.line(std::to_string(c.offset) + " " + std::to_string(c.satisfied) + "/" + std::to_string(c.total)
                         + " " + excerpt);
            }
            rep.data() = {{"count", found.size()}, {"candidates", arr}};
            rep.code = found.empty() ? negative : ok;
        };
    });

    // bashs3
    auto* bash = app.add_subcommand("bashs3", "The S3 map and linear layers");
    bash->require_subcommand(1);
    std::string bash_spec, bash_hex;
    unsigned bash_width = 8;
    auto* bash_check = bash->add_subcommand("check-layer", "Is S3 + L a permutation?");
    bash_check->add_option("--spec", bash_spec, "e.g. a+a<1>+b|a+c|b")->required();
    bash_check->add_option("--width", bash_width);
    bash_check->callback([&] {
        action = [&] {
            const auto layer = bash::LinearLayer::parse(bash_spec);
            require_work(st, std::ldexp(1.0, static_cast<int>(3 * std::min(bash_width, 21U))), "difference scan");
            const bool criterion = bash::is_permutation_via_criterion(layer, bash_width);
            const bool exact = bash::is_permutation_exact(layer, bash_width);
            rep.data() = {{"layer", layer.to_string()},
                          {"width", bash_width},
                          {"admissible", layer.admissible()},
                          {"all_ones_criterion", criterion},
                          {"permutation", exact}};
            rep.line("layer: " + layer.to_string());
            rep.line(std::string("admissible: ") + (layer.admissible() ? "yes" : "no"));
            rep.line(std::string("all-ones criterion: ") + (criterion ? "holds" : "violated"));
            rep.line(std::string("permutation: ") + (exact ? "yes" : "no"));
            if (!exact && bash_width <= 8) {
                const auto hit = bash::find_collision(layer, bash_width);
                if (hit) {
                    std::ostringstream os;
                    os << std::hex << "collision: (" << hit->first.a << ',' << hit->first.b << ',' << hit->first.c
                       << ") (" << hit->second.a << ',' << hit->second.b << ',' << hit->second.c << ')';
                    rep.line(os.str());
                    rep.data()["collision"] = {{hit->first.a, hit->first.b, hit->first.c},
                                               {hit->second.a, hit->second.b, hit->second.c}};
                }
            }
            rep.code = exact ? ok : negative;
        };
    });
    unsigned s3_width = 64;
    auto* bash_s3 = bash->add_subcommand("s3", "Apply S3 to a,b,c");
    bash_s3->add_option("--hex", bash_hex, "a,b,c in hex")->required();
    bash_s3->add_option("--width", s3_width);
    bash_s3->callback([&] {
        action = [&] {
            const auto parts = split(bash_hex, ',');
            if (parts.size() != 3)
                throw format_error("expected a,b,c");
            std::uint64_t w[3];
            for (int i = 0; i < 3; ++i) {
                std::size_t used = 0;
                w[i] = std::stoull(parts[i], &used, 16);
                if (used != parts[i].size())
                    throw format_error("bad hex word " + parts[i]);
            }
            const auto y = bash::s3({w[0], w[1], w[2]}, s3_width);
            std::ostringstream os;
            os << std::hex << y.a << ',' << y.b << ',' << y.c;
            rep.data() = {{"output", os.str()}};
            rep.line(os.str());
        };
    });

    // tp2
    auto* tp = app.add_subcommand("tp2", "TwinPeaks2 with keyed word permutations");
    tp->require_subcommand(1);
    std::string tp_seed, tp_block;
    auto* tp_enc = tp->add_subcommand("encrypt", "Encrypt one block");
    tp_enc->add_option("--seed", tp_seed, "Key seed for S1, S2, S3")->required();
    tp_enc->add_option("--block", tp_block, "32 hex digits")->required();
    tp_enc->callback([&] {
        action = [&] {
            const auto s = tp2::RoundPermutations::keyed(tp_seed);
            const auto y = tp2::block_hex(tp2::encrypt(tp2::parse_block_hex(tp_block), s));
            rep.data() = {{"ciphertext", y}};
            rep.line(y);
        };
    });
    auto* tp_crack = tp->add_subcommand("crack", "Decrypt using only the encryption oracle");
    tp_crack->add_option("--seed", tp_seed)->required();
    tp_crack->add_option("--block", tp_block)->required();
    tp_crack->callback([&] {
        action = [&] {
            const auto s = tp2::RoundPermutations::keyed(tp_seed);
            const tp2::EncryptionOracle oracle = [&s](const tp2::Block& x) { return tp2::encrypt(x, s); };
            const auto x = tp2::block_hex(tp2::reflection_decrypt(tp2::parse_block_hex(tp_block), oracle));
            rep.data() = {{"plaintext", x}};
            rep.line(x);
        };
    });

    // fnv
    auto* fnvc = app.add_subcommand("fnv", "FNV-1a over 128 bits");
    fnvc->require_subcommand(1);
    std::string fnv_a, fnv_b;
    std::size_t fnv_n = 18;
    auto* fnv_hash = fnvc->add_subcommand("hash", "Hash a hex message");
    fnv_hash->add_option("message", fnv_a)->required();
    fnv_hash->callback([&] {
        action = [&] {
            const auto h = fnv::to_hex(fnv::fnv1a(fnv::parse_hex(fnv_a)));
            rep.data() = {{"digest", h}};
            rep.line(h);
        };
    });
    auto* fnv_verify = fnvc->add_subcommand("verify-pair", "Check two hex messages for a collision");
    fnv_verify->add_option("first", fnv_a)->required();
    fnv_verify->add_option("second", fnv_b)->required();
    fnv_verify->callback([&] {
        action = [&] {
            const auto x = fnv::parse_hex(fnv_a), y = fnv::parse_hex(fnv_b);
            const auto hx = fnv::fnv1a(x), hy = fnv::fnv1a(y);
            const bool hit = x != y && hx == hy;
            rep.data() = {{"collision", hit}, {"digest_first", fnv::to_hex(hx)}, {"digest_second", fnv::to_hex(hy)}};
            rep.line(hit ? "collision" : (x == y ? "identical messages" : "no collision"));
            rep.line(fnv::to_hex(hx));
            if (hx != hy)
                rep.line(fnv::to_hex(hy));
            rep.code = hit ? ok : negative;
        };
    });
    auto* fnv_find = fnvc->add_subcommand("find-collision", "Lattice search for a fresh collision");
    fnv_find->add_option("--n", fnv_n, "Message length in bytes (12..40)");
    fnv_find->callback([&] {
        action = [&] {
            std::mt19937_64 rng(st.seed);
            fnv::SplittingOptions opt;
            require_work(st, static_cast<double>(opt.max_restarts * opt.node_budget), "splitting search");
            const auto c = fnv::find_collision(fnv_n, rng, opt);
            json rel = c.relation.a;
            rep.data() = {{"first", fnv::to_hex(c.first)},
                          {"second", fnv::to_hex(c.second)},
                          {"digest", fnv::to_hex(c.digest)},
                          {"relation", rel},
                          {"t", c.t}};
            rep.line(fnv::to_hex(c.first));
            rep.line(fnv::to_hex(c.second));
            rep.line(fnv::to_hex(c.digest));
        };
    });

    // metric
    auto* met = app.add_subcommand("metric", "Metrically regular set cryptosystem");
    met->require_subcommand(1);
    std::string met_c, met_vectors;
    unsigned met_alphabet = 26;
    auto* met_attack = met->add_subcommand("attack", "Recover ell from C and decrypt intercepted vectors");
    met_attack->add_option("--c", met_c, "File with the leaked set, one 0/1 vector per line")->required();
    met_attack->add_option("--vectors", met_vectors, "Comma-separated files of intercepted vectors")->required();
    met_attack->add_option("--alphabet", met_alphabet);
    met_attack->callback([&] {
        action = [&] {
            std::ifstream cin_(met_c);
            if (!cin_)
                throw format_error("cannot open " + met_c);
            const auto cset = metric::read_vectors(cin_);
            if (cset.empty())
                throw format_error("leaked set is empty");
            const auto n = static_cast<unsigned>(cset.front().size());
            require_work(st, std::ldexp(1.0, static_cast<int>(std::min(n, 60U))) * n, "distance table");
            const metric::LeakAttack eve(metric::to_points(cset, n), n);
            std::vector<std::vector<unsigned>> cands;
            json arr = json::array();
            for (const auto& file : split(met_vectors, ',')) {
                std::ifstream vin(file);
                if (!vin)
                    throw format_error("cannot open " + file);
                for (const auto& v : metric::read_vectors(vin)) {
                    cands.push_back(eve.decrypt_letter(v, met_alphabet));
                    arr.push_back(cands.back());
                }
            }
            rep.line("ell: " + std::to_string(eve.ell()));
            std::string letters;
            for (const auto& c : cands) {
                std::string s;
                for (auto k : c)
                    s += (s.empty() ? "" : "/") + std::string(1, k <= 26 ? static_cast<char>('A' + k - 1) : '?');
                letters += (letters.empty() ? "" : " ") + s;
            }
            rep.line("candidates: " + letters);
            rep.data() = {{"ell", eve.ell()}, {"candidates", arr}};
            if (!cands.empty()) {
                const auto readings = metric::rank_readings(cands, static_cast<std::size_t>(std::min<std::uint64_t>(st.max_work, 1U << 20)));
                rep.line("best reading: " + readings.front().text);
                rep.data()["best_reading"] = readings.front().text;
            }
        };
    });

    // design
    auto* des = app.add_subcommand("design", "Combinatorial matrix checks");
    des->require_subcommand(1);
    std::size_t des_n = 5, des_t = 1, des_r = 1;
    std::string des_which = "min", des_file, des_p1, des_p2, des_poly;
    auto* des_key = des->add_subcommand("keymatrix", "Matrices with odd diagonals");
    des_key->add_option("--n", des_n);
    des_key->add_option("--which", des_which)->check(CLI::IsMember({"min", "max", "check"}));
    des_key->add_option("--file", des_file, "Matrix to check");
    des_key->callback([&] {
        action = [&] {
            BitMatrix m = des_which == "check" ? load_matrix(des_file)
                          : des_which == "min" ? design::key_matrix_min(des_n)
                                               : design::key_matrix_max(des_n);
            const auto chk = design::check_key_matrix(m);
            rep.data() = {{"matrix", m.to_string()}, {"weight", m.weight()}, {"valid", chk.valid}};
            if (des_which != "check")
                rep.line(m.to_string());
            rep.line("weight: " + std::to_string(m.weight()));
            rep.line(std::string("odd diagonals: ") + (chk.valid ? "yes" : "no"));
            if (chk.violation) {
                const auto& d = *chk.violation;
                const std::string dir = d.direction == design::DiagonalDirection::down_right ? "down-right" : "down-left";
                rep.line("even diagonal: " + dir + " from (" + std::to_string(d.row + 1) + "," + std::to_string(d.col + 1)
                         + ") length " + std::to_string(d.length));
                rep.data()["violation"] = {{"direction", dir}, {"row", d.row + 1}, {"col", d.col + 1}, {"length", d.length}};
            }
            rep.code = chk.valid ? ok : negative;
        };
    });
    auto* des_syl = des->add_subcommand("sylvester", "Is the inverse of a Sylvester matrix again one?");
    des_syl->add_option("--p1", des_p1, "Coefficients, leading first")->required();
    des_syl->add_option("--p2", des_p2)->required();
    des_syl->callback([&] {
        action = [&] {
            const auto spec = design::SylvesterSpec::parse(des_p1, des_p2);
            const auto m = design::sylvester_build(spec);
            const auto v = design::sylvester_inverse_is_sylvester(spec);
            rep.data() = {{"matrix", m.to_string()}, {"invertible", v.invertible}, {"inverse_is_sylvester", v.yes()}};
            rep.line(m.to_string());
            rep.line(std::string("invertible: ") + (v.invertible ? "yes" : "no"));
            rep.line(std::string("inverse is Sylvester: ") + (v.yes() ? "yes" : "no"));
            if (v.yes()) {
                rep.line("witness: " + v.witness->p1.to_string() + " " + v.witness->p2.to_string());
                rep.data()["witness"] = {v.witness->p1.to_string(), v.witness->p2.to_string()};
            }
            rep.code = v.yes() ? ok : negative;
        };
    });
    auto* des_oa = des->add_subcommand("oa-check", "Orthogonal array of strength t");
    des_oa->add_option("--t", des_t)->required();
    des_oa->add_option("--file", des_file)->required();
    des_oa->callback([&] {
        action = [&] {
            const auto m = load_matrix(des_file);
            require_work(st,
                         static_cast<double>(design::binomial_capped(m.cols(), des_t, design::max_subsets))
                             * static_cast<double>(m.rows()),
                         "strength check");
            const auto r = design::check_oa(m, des_t);
            rep.data() = {{"valid", r.valid}, {"t", des_t}, {"lambda", r.lambda}};
            rep.line(std::string("OA of strength ") + std::to_string(des_t) + ": " + (r.valid ? "yes" : "no"));
            if (r.valid) {
                rep.line("lambda: " + std::to_string(r.lambda));
            } else {
                const auto cols = to_one_based(r.columns);
                std::string s;
                for (auto c : cols)
                    s += (s.empty() ? "" : ",") + std::to_string(c);
                rep.line("columns " + s + " tuple " + BitVec::from_uint(r.tuple, des_t).to_string() + " appears "
                         + std::to_string(r.count) + " times, expected " + std::to_string(r.lambda));
                rep.data()["columns"] = cols;
                rep.data()["tuple"] = BitVec::from_uint(r.tuple, des_t).to_string();
                rep.data()["count"] = r.count;
            }
            rep.code = r.valid ? ok : negative;
        };
    });
    auto* des_dis = des->add_subcommand("disjunct", "t-disjunct check");
    des_dis->add_option("--t", des_t)->required();
    des_dis->add_option("--file", des_file)->required();
    des_dis->callback([&] {
        action = [&] {
            const auto m = load_matrix(des_file);
            require_work(st,
                         static_cast<double>(design::binomial_capped(m.cols(), des_t, design::max_subsets))
                             * static_cast<double>(m.cols()),
                         "disjunct check");
            const auto r = design::check_disjunct(m, des_t);
            rep.data() = {{"disjunct", r.disjunct}, {"t", des_t}};
            rep.line(std::string("t-disjunct: ") + (r.disjunct ? "yes" : "no"));
            if (!r.disjunct) {
                const auto cover = to_one_based(r.cover);
                std::string s;
                for (auto c : cover)
                    s += (s.empty() ? "" : ",") + std::to_string(c);
                rep.line("column " + std::to_string(r.covered + 1) + " is covered by columns " + s);
                rep.data()["cover"] = cover;
                rep.data()["covered"] = r.covered + 1;
            }
            rep.code = r.disjunct ? ok : negative;
        };
    });
    auto* des_rm = des->add_subcommand("rm-fixed", "Does A fix a nonzero element of R(r,n)/R(r-1,n)?");
    des_rm->add_option("--poly", des_poly, "Use the companion matrix of this polynomial, leading coefficient first");
    des_rm->add_option("--file", des_file, "Or read the matrix from a file");
    des_rm->add_option("--r", des_r)->required();
    des_rm->callback([&] {
        action = [&] {
            if (des_poly.empty() == des_file.empty())
                throw format_error("give exactly one of --poly and --file");
            const auto a = des_poly.empty() ? load_matrix(des_file) : design::companion(BitVec::from_string(des_poly));
            require_work(st,
                         std::pow(static_cast<double>(design::binomial_capped(a.rows(), des_r, 1U << 20)), 3.0),
                         "quotient map");
            const bool only_zero = design::rm_fixed_only_zero(a, des_r);
            rep.data() = {{"n", a.rows()}, {"r", des_r}, {"only_zero_fixed", only_zero}};
            rep.line(std::string("only zero fixed: ") + (only_zero ? "yes" : "no"));
            rep.code = only_zero ? ok : negative;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    }

    auto fail = [&](const std::exception& e, int code) {
        std::cerr << "kit: " << e.what() << '\n';
        if (st.format == "json")
            std::cout << json{{"error", e.what()}, {"exit", code}}.dump() << '\n';
        return code;
    };
    try {
        action();
    } catch (const resource_error& e) {
        return fail(e, over_budget);
    } catch (const search_failure& e) {
        return fail(e, negative);
    } catch (const std::invalid_argument& e) {
        return fail(e, usage);
    } catch (const std::domain_error& e) {
        return fail(e, usage);
    } catch (const std::out_of_range& e) {
        return fail(e, usage);
    }
    rep.print(st);
    return rep.code;
}
