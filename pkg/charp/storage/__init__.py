STORAGES = {
    "JsonlSweepStorage": ".storage.jsonl_impl",
}
