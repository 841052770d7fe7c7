// placeholder; the acceptance suite is filled in alongside the library
int main() { return 0; }
