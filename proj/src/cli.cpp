#include "hyx/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>

#include "hyx/editlist.hpp"
#include "hyx/locator.hpp"
#include "hyx/net.hpp"
#include "hyx/store.hpp"

namespace hyx::cli {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::string store;
  std::string algo;
  std::string out_file;
  bool put = false;
  std::string bind = "127.0.0.1:8420";
  std::vector<std::string> positional;
};

class Session {
 public:
  Session(const Options& opts, std::istream& in, std::ostream& out,
          std::ostream& err)
      : opts_(opts), in_(in), out_(out), err_(err) {}

  fs::path store_path() const {
    return opts_.store.empty() ? default_store_path() : fs::path(opts_.store);
  }

  std::optional<HashAlgorithm> algo_flag() const {
    if (opts_.algo.empty()) return std::nullopt;
    return parse_algorithm(opts_.algo);
  }

  bool store_exists() const { return fs::exists(store_path() / "config"); }

  Store open_store() const { return Store::open(store_path()); }

  Store init_store() const {
    return Store::init(
        {store_path(), algo_flag().value_or(kDefaultAlgorithm),
         Normalization::None});
  }

  Bytes read_input(const std::string& name) const {
    if (name == "-")
      return Bytes(std::istreambuf_iterator<char>(in_), {});
    std::ifstream file(name, std::ios::binary);
    if (!file)
      throw Error(Errc::NotFound, "cannot read file '" + name + "'");
    return Bytes(std::istreambuf_iterator<char>(file), {});
  }

  void write_doc(const Document& doc) const {
    out_.write(reinterpret_cast<const char*>(doc.bytes().data()),
               static_cast<std::streamsize>(doc.size()));
    out_.flush();
  }

  // An existing file wins; otherwise the argument must be a stored id.
  EditList load_edit_list(const std::string& arg, const Resolver& resolver) const {
    if (arg == "-" || fs::exists(arg))
      return parse_edit_list(Document(read_input(arg)));
    auto id = try_parse_id(arg);
    if (!id)
      throw Error(Errc::NotFound,
                  "'" + arg + "' is neither a file nor a document id");
    return parse_edit_list(resolver.resolve(*id));
  }

  int add() {
    auto store = init_store();
    Document doc(read_input(opts_.positional.at(0)));
    auto id = store.put(doc, algo_flag().value_or(store.config().default_algorithm));
    out_ << id.str() << '\n';
    return 0;
  }

  int cat() {
    auto store = open_store();
    write_doc(store.get(parse_id(opts_.positional.at(0))));
    return 0;
  }

  int id() {
    Document doc(read_input(opts_.positional.at(0)));
    auto algo = algo_flag().value_or(kDefaultAlgorithm);
    if (store_exists()) {
      auto store = open_store();
      doc = normalize(doc, store.config().normalization);
      if (!algo_flag()) algo = store.config().default_algorithm;
    }
    out_ << compute_id(doc, algo).str() << '\n';
    return 0;
  }

  int select() {
    auto store = open_store();
    auto doc = store.get(parse_id(opts_.positional.at(0)));
    auto loc = parse_locator(opts_.positional.at(1));
    write_doc(transclude(loc, doc).to_document());
    return 0;
  }

  int assemble() {
    auto store = opts_.put ? init_store() : open_store();
    auto resolver = resolver_view(store);
    auto list = load_edit_list(opts_.positional.at(0), resolver);
    auto result = hyx::assemble(list, resolver);
    if (!opts_.out_file.empty()) {
      std::ofstream file(opts_.out_file, std::ios::binary | std::ios::trunc);
      file.write(reinterpret_cast<const char*>(result.bytes().data()),
                 static_cast<std::streamsize>(result.size()));
      if (!file)
        throw Error(Errc::StorageFailure,
                    "cannot write '" + opts_.out_file + "'");
    }
    if (opts_.put)
      out_ << store.put(result).str() << '\n';
    else if (opts_.out_file.empty())
      write_doc(result);
    return 0;
  }

  int links() {
    auto store = opts_.put ? init_store() : open_store();
    auto resolver = resolver_view(store);
    auto list = load_edit_list(opts_.positional.at(0), resolver);
    auto result = hyx::assemble(list, resolver);
    auto result_id = opts_.put ? store.put(result)
                               : compute_id(result, resolver.algorithm());
    for (const auto& link : derive_links(list, resolver, result_id)) {
      out_ << kind_name(*link.kind) << ' ' << link.segment.locator().str()
           << ' ' << link.segment.document().str();
      if (opts_.put) out_ << " -> " << result_id.str();
      out_ << '\n';
    }
    return 0;
  }

  int verify() {
    auto store = open_store();
    auto resolver = resolver_view(store);
    auto list = load_edit_list(opts_.positional.at(0), resolver);
    auto report = hyx::verify(list, resolver);
    out_ << report.str();
    return report.ok() ? 0 : 1;
  }

  int serve() {
    auto store = open_store();
    Server server(store);
    err_ << "serving " << store.root().string() << " on " << opts_.bind
         << std::endl;
    server.run(opts_.bind);
    return 0;
  }

  int fetch() {
    auto store = init_store();
    RemoteSource source{opts_.positional.at(0)};
    auto id = parse_id(opts_.positional.at(1));
    fetch_verified(source, id, store);
    out_ << id.str() << '\n';
    return 0;
  }

 private:
  const Options& opts_;
  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err) {
  CLI::App app{"hyx: content-addressed transclusion tool", "hyx"};
  app.require_subcommand(1);
  Options opts;
  app.add_option("--store", opts.store, "store directory (default $HYX_STORE or ./.hyx)");
  app.add_option("--algo", opts.algo, "hash algorithm")
      ->check(CLI::IsMember({"sha1", "sha256"}));

  struct Command {
    const char* name;
    const char* help;
    std::vector<const char*> args;
    int (Session::*handler)();
  };
  const std::vector<Command> commands = {
      {"add", "store a file (or - for stdin) and print its id", {"file"}, &Session::add},
      {"cat", "write a stored document to stdout", {"id"}, &Session::cat},
      {"id", "print the id of a file without storing it", {"file"}, &Session::id},
      {"select", "print the segment a locator selects", {"doc-id", "locator"}, &Session::select},
      {"assemble", "assemble an edit list", {"editlist"}, &Session::assemble},
      {"links", "print the links an edit list implies", {"editlist"}, &Session::links},
      {"verify", "check every reference and locator of an edit list", {"editlist"}, &Session::verify},
      {"serve", "serve the store read-only over HTTP", {}, &Session::serve},
      {"fetch", "fetch a document from a remote endpoint", {"base-url", "id"}, &Session::fetch},
  };

  std::vector<std::pair<CLI::App*, int (Session::*)()>> subs;
  for (const auto& cmd : commands) {
    auto* sub = app.add_subcommand(cmd.name, cmd.help);
    sub->fallthrough();
    if (!cmd.args.empty())
      sub->add_option("args", opts.positional)
          ->expected(static_cast<int>(cmd.args.size()))
          ->required();
    if (std::string_view(cmd.name) == "assemble")
      sub->add_option("--out", opts.out_file, "write the result to a file");
    if (std::string_view(cmd.name) == "assemble" ||
        std::string_view(cmd.name) == "links")
      sub->add_flag("--put", opts.put, "store the result and print its id");
    if (std::string_view(cmd.name) == "serve")
      sub->add_option("--bind", opts.bind, "host:port to listen on");
    subs.emplace_back(sub, cmd.handler);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Session session(opts, in, out, err);
  try {
    for (auto& [sub, handler] : subs)
      if (sub->parsed()) return (session.*handler)();
  } catch (const Error& e) {
    err << "hyx: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "hyx: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace hyx::cli
