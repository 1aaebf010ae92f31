"""Validate a JSON report against the published schema."""
import json
import sys

import jsonschema


def main() -> int:
    schema_path, report_path = sys.argv[1], sys.argv[2]
    with open(schema_path, encoding="utf-8") as f:
        schema = json.load(f)
    with open(report_path, encoding="utf-8") as f:
        report = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    jsonschema.validate(report, schema, cls=jsonschema.Draft202012Validator)
    summary = report["summary"]
    if summary["total"] != len(report["records"]):
        print("summary total does not match the record count")
        return 1
    print(f"{len(report['records'])} records valid")
    return 0


if __name__ == "__main__":
    sys.exit(main())
