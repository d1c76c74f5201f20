namespace ramsey {
// implementation pending
}
