// Minimal deterministic SVG emitter. No clocks, no randomness: the same
// inputs always produce the same bytes, so figure files diff cleanly.

export const PALETTE = [
    "#1f77b4",
    "#ff7f0e",
    "#2ca02c",
    "#d62728",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#7f7f7f",
    "#bcbd22",
    "#17becf",
] as const;

export function seriesColor(index: number): string {
    return PALETTE[index % PALETTE.length];
}

// Fixed-point screen coordinates keep the output stable across platforms.
function fmt(x: number): string {
    const rounded = x.toFixed(2);
    return rounded === "-0.00" ? "0.00" : rounded;
}

export function escapeText(s: string): string {
    return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export class SvgCanvas {
    private readonly parts: string[] = [];

    constructor(
        readonly width: number,
        readonly height: number,
    ) {
        this.parts.push(
            `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}"` +
                ` viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`,
        );
        this.parts.push(`<rect x="0" y="0" width="${width}" height="${height}" fill="white"/>`);
    }

    line(x1: number, y1: number, x2: number, y2: number, attrs: string): void {
        this.parts.push(`<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" ${attrs}/>`);
    }

    polyline(points: Array<[number, number]>, attrs: string): void {
        const coords = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
        this.parts.push(`<polyline points="${coords}" fill="none" ${attrs}/>`);
    }

    circle(cx: number, cy: number, r: number, attrs: string): void {
        this.parts.push(`<circle cx="${fmt(cx)}" cy="${fmt(cy)}" r="${fmt(r)}" ${attrs}/>`);
    }

    text(x: number, y: number, content: string, attrs: string): void {
        this.parts.push(`<text x="${fmt(x)}" y="${fmt(y)}" ${attrs}>${escapeText(content)}</text>`);
    }

    render(): string {
        return this.parts.join("\n") + "\n</svg>\n";
    }
}

// Tick positions at 1/2/5 multiples of a power of ten covering [lo, hi].
export function linearTicks(lo: number, hi: number, target = 6): number[] {
    if (!(hi > lo)) {
        return [lo];
    }
    const span = hi - lo;
    const raw = span / target;
    const mag = Math.pow(10, Math.floor(Math.log10(raw)));
    let step = mag;
    for (const m of [1, 2, 5, 10]) {
        if (m * mag >= raw) {
            step = m * mag;
            break;
        }
    }
    const ticks: number[] = [];
    const first = Math.ceil(lo / step);
    for (let k = first; k * step <= hi + step * 1e-9; k++) {
        ticks.push(k * step);
    }
    return ticks;
}

// Integer decades covering [lo, hi] in log10 space.
export function decadeTicks(lo: number, hi: number): number[] {
    const ticks: number[] = [];
    for (let k = Math.ceil(lo - 1e-9); k <= Math.floor(hi + 1e-9); k++) {
        ticks.push(k);
    }
    return ticks;
}

// Shortest fixed/exponential form that still distinguishes neighbouring
// ticks; tight ranges (e.g. a Casimir column constant to 1e-16) need
// more digits than a default %.6g would print.
export function tickLabels(ticks: number[]): string[] {
    for (let digits = 6; digits <= 17; digits++) {
        const labels = ticks.map((t) => formatNumber(t, digits));
        if (new Set(labels).size === labels.length) {
            return labels;
        }
    }
    return ticks.map((t) => t.toExponential(17));
}

export function formatNumber(value: number, digits = 6): string {
    if (value === 0) {
        return "0";
    }
    const magnitude = Math.abs(value);
    const body =
        magnitude >= 1e-4 && magnitude < 1e6 ? value.toPrecision(digits) : value.toExponential(digits - 1);
    return body
        .replace(/(\.\d*?)0+(?=e|$)/, "$1")
        .replace(/\.(?=e|$)/, "")
        .replace(/e\+?(-?)0*(\d)/, "e$1$2");
}
