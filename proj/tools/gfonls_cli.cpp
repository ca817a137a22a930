#include "gfonls/io.hpp"

int main(int argc, char** argv) { return gfonls::io::dispatch(argc, argv); }
