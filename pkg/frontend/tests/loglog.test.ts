import { existsSync, readFileSync, statSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";
import { readConvergence, renderLoglog } from "../src/loglog.js";
import { main } from "../src/plot_loglog.js";
import { fixture, scratchDir, scratchFile } from "./helpers.js";

describe("readConvergence", () => {
    it("reads the fitted summary from the JSON output", () => {
        const data = readConvergence(fixture("A_rk4_convergence.json"));
        expect(data.label).toBe("rk4");
        expect(data.h).toHaveLength(5);
        expect(data.slope).not.toBeNull();
        // fourth-order baseline: the stored fit sits near 4
        expect(data.slope!).toBeGreaterThan(3.7);
        expect(data.slope!).toBeLessThan(4.3);
    });

    it("refits the slope from a CSV table, matching the JSON summary", () => {
        const json = readConvergence(fixture("A_rk4_convergence.json"));
        const csv = readConvergence(fixture("A_rk4_convergence.csv"));
        expect(csv.slope).not.toBeNull();
        expect(Math.abs(csv.slope! - json.slope!)).toBeLessThan(1e-8);
    });

    it("rejects a schema-version mismatch", () => {
        const dir = scratchDir();
        const payload = JSON.parse(readFileSync(fixture("A_rk4_convergence.json"), "utf8"));
        payload.schema_version = "999";
        const bad = scratchFile(dir, "bad.json", JSON.stringify(payload));
        expect(() => readConvergence(bad)).toThrow(/unsupported schema_version "999"/);
    });

    it("rejects malformed JSON and missing fields", () => {
        const dir = scratchDir();
        expect(() => readConvergence(scratchFile(dir, "broken.json", "{not json"))).toThrow(/cannot read/);
        const noH = scratchFile(dir, "noh.json", JSON.stringify({ schema_version: "1", error: [1] }));
        expect(() => readConvergence(noH)).toThrow(/field h/);
    });
});

describe("renderLoglog", () => {
    it("annotates the fitted slope near 4 for the fourth-order baseline", () => {
        const svg = renderLoglog([readConvergence(fixture("A_rk4_convergence.json"))]);
        const match = svg.match(/slope (\d+\.\d+)/);
        expect(match).not.toBeNull();
        const slope = Number(match![1]);
        expect(slope).toBeGreaterThan(3.7);
        expect(slope).toBeLessThan(4.3);
        expect(svg).toContain("rk4");
    });

    it("marks points excluded from the fit as hollow", () => {
        const svg = renderLoglog([readConvergence(fixture("A_rk4_convergence.json"))]);
        // the finest step of the fixture sits at the round-off floor
        expect(svg.match(/class="excluded"/g)).toHaveLength(1);
    });

    it("is deterministic", () => {
        const data = readConvergence(fixture("A_rk4_convergence.json"));
        expect(renderLoglog([data])).toBe(renderLoglog([data]));
    });
});

describe("plot_loglog CLI", () => {
    it("writes a nonempty image from the JSON fixture and returns 0", () => {
        const dir = scratchDir();
        const out = join(dir, "conv.svg");
        expect(main([fixture("A_rk4_convergence.json"), out])).toBe(0);
        expect(existsSync(out)).toBe(true);
        expect(statSync(out).size).toBeGreaterThan(1000);
        expect(readFileSync(out, "utf8")).toContain("slope 3.99");
    });

    it("accepts the CSV table form as well", () => {
        const dir = scratchDir();
        const out = join(dir, "conv_csv.svg");
        expect(main([fixture("A_rk4_convergence.csv"), out])).toBe(0);
        expect(readFileSync(out, "utf8")).toContain("slope 3.99");
    });

    it("rejects a schema-version mismatch with a nonzero exit", () => {
        const dir = scratchDir();
        const payload = JSON.parse(readFileSync(fixture("A_rk4_convergence.json"), "utf8"));
        payload.schema_version = "999";
        const bad = scratchFile(dir, "bad.json", JSON.stringify(payload));
        expect(main([bad, join(dir, "out.svg")])).toBe(1);
        expect(existsSync(join(dir, "out.svg"))).toBe(false);
    });

    it("fails without enough arguments", () => {
        expect(main(["one.json"])).toBe(1);
    });
});
