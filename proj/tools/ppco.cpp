#include <iostream>

#include "ppco/cli.hpp"
#include "ppco/http.hpp"

int main(int argc, char** argv) {
  return ppco::cli_run(argc, argv, std::cout, std::cerr, [](ppco::Store& store, const std::string& host, int port) {
    std::cerr << "ppco: serving " << store.root() << " on http://" << host << ":" << port << "\n";
    return ppco::serve(store, host, port) ? 0 : 1;
  });
}
