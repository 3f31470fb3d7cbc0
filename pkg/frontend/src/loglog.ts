import { readFileSync } from "node:fs";
import { parseConvergenceCsv } from "./csv.js";
import { checkSchemaVersion } from "./schema.js";
import { PlotError, fileStem } from "./types.js";
import { SvgCanvas, decadeTicks, seriesColor } from "./svg.js";

const WIDTH = 640;
const HEIGHT = 460;
const LEFT = 80;
const RIGHT = 30;
const TOP = 40;
const BOTTOM = 60;

export interface ConvergenceData {
    label: string;
    h: number[];
    error: number[];
    excluded: boolean[];
    slope: number | null;
}

function expectNumbers(source: string, field: string, value: unknown): number[] {
    if (!Array.isArray(value) || value.some((v) => typeof v !== "number")) {
        throw new PlotError(`${source}: field ${field} must be an array of numbers`);
    }
    return value as number[];
}

// Least-squares slope of log error vs log h over the usable points;
// used only for CSV inputs, which carry no fitted summary.
function fitSlope(h: number[], error: number[], excluded: boolean[]): number | null {
    const logH: number[] = [];
    const logE: number[] = [];
    for (let i = 0; i < h.length; i++) {
        if (!excluded[i] && error[i] > 0) {
            logH.push(Math.log(h[i]));
            logE.push(Math.log(error[i]));
        }
    }
    if (logH.length < 2) {
        return null;
    }
    const meanH = logH.reduce((a, b) => a + b, 0) / logH.length;
    const meanE = logE.reduce((a, b) => a + b, 0) / logE.length;
    let num = 0;
    let den = 0;
    for (let i = 0; i < logH.length; i++) {
        num += (logH[i] - meanH) * (logE[i] - meanE);
        den += (logH[i] - meanH) * (logH[i] - meanH);
    }
    return den === 0 ? null : num / den;
}

// Reads a convergence result in either of the CLI's two formats. JSON
// carries the fitted slope and a schema version; CSV holds only the
// table, so the slope is refitted here with the same formula.
export function readConvergence(path: string): ConvergenceData {
    if (path.endsWith(".json")) {
        let payload: unknown;
        try {
            payload = JSON.parse(readFileSync(path, "utf8"));
        } catch (err) {
            throw new PlotError(`cannot read ${path}: ${(err as Error).message}`);
        }
        checkSchemaVersion(payload, path);
        const record = payload as Record<string, unknown>;
        const h = expectNumbers(path, "h", record["h"]);
        const error = expectNumbers(path, "error", record["error"]);
        const excludedRaw = record["excluded"];
        if (!Array.isArray(excludedRaw) || excludedRaw.some((v) => typeof v !== "boolean")) {
            throw new PlotError(`${path}: field excluded must be an array of booleans`);
        }
        const excluded = excludedRaw as boolean[];
        if (h.length !== error.length || h.length !== excluded.length || h.length === 0) {
            throw new PlotError(`${path}: h, error, excluded must be nonempty and equal length`);
        }
        const slopeRaw = record["slope"];
        if (slopeRaw !== null && typeof slopeRaw !== "number") {
            throw new PlotError(`${path}: field slope must be a number or null`);
        }
        const stepper = typeof record["stepper"] === "string" ? (record["stepper"] as string) : fileStem(path);
        return { label: stepper, h, error, excluded, slope: slopeRaw as number | null };
    }
    const table = parseConvergenceCsv(path);
    return {
        label: fileStem(path),
        h: table.h,
        error: table.error,
        excluded: table.excluded,
        slope: fitSlope(table.h, table.error, table.excluded),
    };
}

function log10(v: number): number {
    return Math.log(v) / Math.LN10;
}

// Final-error vs step-size plot on log-log axes, one series per input,
// with the fitted order annotated per series.
export function renderLoglog(datasets: ConvergenceData[]): string {
    if (datasets.length === 0) {
        throw new PlotError("no convergence data to draw");
    }
    const points = datasets.flatMap((d) =>
        d.h.map((h, i) => ({ h, error: d.error[i] })).filter((p) => p.h > 0 && p.error > 0),
    );
    if (points.length === 0) {
        throw new PlotError("no positive (h, error) points; nothing to draw on log axes");
    }
    const xLo = Math.min(...points.map((p) => log10(p.h))) - 0.15;
    const xHi = Math.max(...points.map((p) => log10(p.h))) + 0.15;
    const yLo = Math.min(...points.map((p) => log10(p.error))) - 0.4;
    const yHi = Math.max(...points.map((p) => log10(p.error))) + 0.4;

    const plotW = WIDTH - LEFT - RIGHT;
    const plotH = HEIGHT - TOP - BOTTOM;
    const toX = (lg: number) => LEFT + ((lg - xLo) / (xHi - xLo)) * plotW;
    const toY = (lg: number) => TOP + plotH - ((lg - yLo) / (yHi - yLo)) * plotH;

    const svg = new SvgCanvas(WIDTH, HEIGHT);
    svg.text(WIDTH / 2, 22, "final-momentum error vs h", 'font-size="14" text-anchor="middle" fill="#222"');

    for (const k of decadeTicks(xLo, xHi)) {
        const x = toX(k);
        svg.line(x, TOP, x, TOP + plotH, 'stroke="#e4e7ea" stroke-width="0.7"');
        svg.text(x, TOP + plotH + 18, `1e${k}`, 'font-size="10" text-anchor="middle" fill="#444"');
    }
    for (const k of decadeTicks(yLo, yHi)) {
        const y = toY(k);
        svg.line(LEFT, y, LEFT + plotW, y, 'stroke="#e4e7ea" stroke-width="0.7"');
        svg.text(LEFT - 6, y + 3, `1e${k}`, 'font-size="10" text-anchor="end" fill="#444"');
    }
    svg.line(LEFT, TOP, LEFT, TOP + plotH, 'stroke="#333" stroke-width="1"');
    svg.line(LEFT, TOP + plotH, LEFT + plotW, TOP + plotH, 'stroke="#333" stroke-width="1"');
    svg.text(LEFT + plotW / 2, HEIGHT - 16, "h", 'font-size="12" text-anchor="middle" fill="#222"');
    svg.text(16, TOP - 12, "error", 'font-size="12" text-anchor="start" fill="#222"');

    datasets.forEach((data, i) => {
        const color = seriesColor(i);
        const usable: Array<[number, number]> = [];
        for (let k = 0; k < data.h.length; k++) {
            if (data.h[k] <= 0 || data.error[k] <= 0) {
                continue;
            }
            const x = toX(log10(data.h[k]));
            const y = toY(log10(data.error[k]));
            if (data.excluded[k]) {
                // below the round-off floor: shown but not part of the fit
                svg.circle(x, y, 3.4, `fill="white" stroke="${color}" stroke-width="1.2" class="excluded"`);
            } else {
                svg.circle(x, y, 3.4, `fill="${color}"`);
                usable.push([x, y]);
            }
        }
        usable.sort((a, b) => a[0] - b[0]);
        if (usable.length >= 2) {
            svg.polyline(usable, `stroke="${color}" stroke-width="1.2"`);
        }
        const slopeText = data.slope === null ? "slope n/a" : `slope ${data.slope.toFixed(2)}`;
        const y = TOP + 16 + 16 * i;
        svg.line(LEFT + 12, y - 4, LEFT + 34, y - 4, `stroke="${color}" stroke-width="2"`);
        svg.text(LEFT + 40, y, `${data.label} (${slopeText})`, 'font-size="11" fill="#333"');
    });

    return svg.render();
}
