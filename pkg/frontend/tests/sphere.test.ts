import { existsSync, readFileSync, statSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";
import { parseTrajectoryCsv } from "../src/csv.js";
import { main } from "../src/plot_sphere.js";
import { radiusDefect, renderSphere, sphereRadius } from "../src/sphere.js";
import { fixture, scratchDir, scratchFile } from "./helpers.js";

const HEADER = "t,M1,M2,M3,energy,casimir";

describe("renderSphere", () => {
    it("draws a single-panel figure from a dissipative trajectory", () => {
        const svg = renderSphere([parseTrajectoryCsv(fixture("B_ddb-cay.csv"))]);
        expect(svg.startsWith("<svg")).toBe(true);
        expect(svg.trimEnd().endsWith("</svg>")).toBe(true);
        expect(svg.length).toBeGreaterThan(2000);
        expect(svg).toContain("<polyline");
        expect(svg).toContain("B_ddb-cay");
    });

    it("lays out one panel per input", () => {
        const svg = renderSphere([
            parseTrajectoryCsv(fixture("B_ddb-cay.csv")),
            parseTrajectoryCsv(fixture("C_ddb-cay.csv")),
        ]);
        // each panel has its own sphere silhouette
        expect(svg.match(/fill="#f7f9fc"/g)).toHaveLength(2);
        expect(svg).toContain("B_ddb-cay");
        expect(svg).toContain("C_ddb-cay");
    });

    it("keeps the drawn points on the drawn sphere", () => {
        const traj = parseTrajectoryCsv(fixture("B_ddb-cay.csv"));
        const r = sphereRadius(traj);
        // orbit-preserving integrator output: far inside the line width
        expect(radiusDefect(traj)).toBeLessThan(1e-10 * r);
    });

    it("refuses a trajectory that leaves the sphere", () => {
        const dir = scratchDir();
        const rows = [HEADER];
        for (let k = 0; k <= 40; k++) {
            const r = 0.5 * (1 + 0.01 * k);
            rows.push(`${0.1 * k},${r},0,0,0.1,0.25`);
        }
        const path = scratchFile(dir, "spiral.csv", rows.join("\n") + "\n");
        expect(() => renderSphere([parseTrajectoryCsv(path)])).toThrow(/not an on-sphere trajectory/);
    });

    it("is deterministic", () => {
        const traj = parseTrajectoryCsv(fixture("B_ddb-cay.csv"));
        expect(renderSphere([traj])).toBe(renderSphere([traj]));
    });
});

describe("plot_sphere CLI", () => {
    it("writes a nonempty image and returns 0", () => {
        const dir = scratchDir();
        const out = join(dir, "spheres.svg");
        expect(main([fixture("B_ddb-cay.csv"), out])).toBe(0);
        expect(existsSync(out)).toBe(true);
        expect(statSync(out).size).toBeGreaterThan(2000);
        expect(readFileSync(out, "utf8")).toContain("</svg>");
    });

    it("fails on an empty input file", () => {
        const dir = scratchDir();
        const empty = scratchFile(dir, "empty.csv", "");
        expect(main([empty, join(dir, "out.svg")])).toBe(1);
    });

    it("fails on a missing input file", () => {
        const dir = scratchDir();
        expect(main([join(dir, "nope.csv"), join(dir, "out.svg")])).toBe(1);
    });

    it("fails without enough arguments", () => {
        expect(main(["only-one-arg"])).toBe(1);
    });
});
