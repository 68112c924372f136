//
// Copyright 2026 The ilatk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Bundled desk-scale models used by the test and acceptance suites:
//
//  * toy_aes    -- a memory-mapped CTR-mode block-encryption accelerator
//                  with a two-round cipher; the Table and Logic variants
//                  share the instruction set but implement the round in
//                  different micro programs (lookup table vs logic ops).
//  * toy_stream -- a streaming 2x2-window blur over 4x4 one-bit images;
//                  the High level applies the (uninterpreted) kernel in one
//                  step, the Low level moves pixels through a two-row line
//                  buffer with micro-instructions.
//  * toy_proc   -- a 2-bit, 4-register, 4-word-memory processor with status
//                  bits and a uniform interrupt pseudo-instruction, plus a
//                  two-stage pipelined FSM with a write-back buffer and
//                  result bypass. The buggy variants clear the saved
//                  interrupt-enable bit on trap return instead of setting it.
//
// All models keep their total live state small enough that every shipped
// obligation is decidable by the enumeration engine.

#ifndef ILA_BUNDLED_HPP_
#define ILA_BUNDLED_HPP_

#include <memory>

#include "ila/model.hpp"

namespace ila::bundled {

enum class AesVariant { kTable, kLogic };
enum class StreamLevel { kHigh, kLow };

// ---------------------------------------------------------------------------
// Encryption accelerator.
//
// Interface: commands arrive as (InAddr, InData); the device reacts to
// addresses 0x10..0x17. Six commands read/write the configuration registers,
// one polls the status, and one starts encryption of Length blocks at
// DataAddr in Mem, xor-ing each block with the encrypted per-block counter.

inline ModelPtr toy_aes(AesVariant variant) {
  auto ctx = std::make_shared<TermContext>();
  TermContext& c = *ctx;
  const bool table = variant == AesVariant::kTable;
  auto b2 = [&c](unsigned v) { return c.bv_const(2, v); };

  // Round core: one micro-instruction per round; the two variants compute
  // round(x, k) = rotl1(x ^ k) + 1 either by logic or by a full lookup table
  // written over an arbitrary base array.
  ModelBuilder rb(ctx, "round");
  Expr r_state = rb.add_state("AesState", Sort::bitvec(2));
  Expr r_key = rb.add_state("Key", Sort::bitvec(2));
  Expr r_rd = rb.add_state("RdData", Sort::bitvec(2));
  Expr r_enc = rb.add_state("EncData", Sort::bitvec(2));
  Expr r_rs = rb.add_state("RState", Sort::bitvec(2));
  Expr r_rc = rb.add_state("RoundCtr", Sort::bitvec(2));
  rb.set_init(r_state.var(), BvValue(0));
  rb.set_init(r_key.var(), BvValue(0));
  rb.set_init(r_rd.var(), BvValue(0));
  rb.set_init(r_enc.var(), BvValue(0));
  rb.set_init(r_rs.var(), BvValue(0));
  rb.set_init(r_rc.var(), BvValue(0));
  Expr sbox;
  if (table) sbox = rb.add_state("Sbox", Sort::array(2, 2));

  auto round_fn = [&](Expr x, Expr k) {
    Expr y = c.bvxor(x, k);
    if (!table) {
      Expr rot = c.concat(c.extract(0, 0, y), c.extract(1, 1, y));
      return c.bvadd(rot, b2(1));
    }
    // rotl1(y) + 1 tabulated: 0->1, 1->3, 2->2, 3->0.
    Expr t = sbox;
    t = c.store(t, b2(0), b2(1));
    t = c.store(t, b2(1), b2(3));
    t = c.store(t, b2(2), b2(2));
    t = c.store(t, b2(3), b2(0));
    return c.select(t, y);
  };

  Expr encrypting =
      c.land(c.eq(r_state, b2(2)), c.ule(r_rc, b2(1)));
  rb.set_valid(encrypting);
  Expr r_op = rb.set_fetch(c.ite(encrypting, r_rc, b2(3)));
  rb.add_instruction("ROUND_0", c.eq(r_op, b2(0)),
                     {{r_rs.var(), round_fn(r_rs, r_key)},
                      {r_rc.var(), b2(1)}});
  rb.add_instruction("ROUND_1", c.eq(r_op, b2(1)),
                     {{r_enc.var(), c.bvxor(r_rd, round_fn(r_rs, r_key))},
                      {r_rc.var(), b2(0)},
                      {r_state.var(), b2(3)}});
  ModelPtr round = rb.build();

  // Block engine: load a block, run the rounds, store the block; Counter
  // walks the message and AesState sequences the phases
  // (0 idle, 1 load, 2 encrypt, 3 store).
  ModelBuilder bb(ctx, "block");
  Expr k_state = bb.add_state("AesState", Sort::bitvec(2));
  Expr k_mem = bb.add_state("Mem", Sort::array(2, 2));
  Expr k_addr = bb.add_state("DataAddr", Sort::bitvec(2));
  Expr k_len = bb.add_state("Length", Sort::bitvec(2));
  Expr k_key = bb.add_state("Key", Sort::bitvec(2));
  Expr k_ctr = bb.add_state("Ctr", Sort::bitvec(2));
  Expr k_cnt = bb.add_state("Counter", Sort::bitvec(2));
  Expr k_rd = bb.add_state("RdData", Sort::bitvec(2));
  Expr k_enc = bb.add_state("EncData", Sort::bitvec(2));
  Expr k_rs = bb.add_state("RState", Sort::bitvec(2));
  for (const Expr& e : {k_state, k_addr, k_key, k_ctr, k_cnt, k_rd, k_enc,
                        k_rs})
    bb.set_init(e.var(), BvValue(0));
  bb.set_init(k_len.var(), BvValue(1));
  bb.set_valid(c.lor(c.eq(k_state, b2(1)), c.eq(k_state, b2(3))));
  Expr k_op = bb.set_fetch(k_state);
  Expr cur = c.bvadd(k_addr, k_cnt);
  bb.add_instruction("LOAD_BLOCK", c.eq(k_op, b2(1)),
                     {{k_rd.var(), c.select(k_mem, cur)},
                      {k_rs.var(), c.bvadd(k_ctr, k_cnt)},
                      {k_state.var(), b2(2)}});
  Expr done = c.eq(c.bvadd(k_cnt, b2(1)), k_len);
  bb.add_instruction("STORE_BLOCK", c.eq(k_op, b2(3)),
                     {{k_mem.var(), c.store(k_mem, cur, k_enc)},
                      {k_cnt.var(), c.ite(done, b2(0), c.bvadd(k_cnt, b2(1)))},
                      {k_state.var(), c.ite(done, b2(0), b2(1))}});
  bb.add_child(round, /*is_micro=*/true,
               {{k_state.var(), r_state.var()},
                {k_key.var(), r_key.var()},
                {k_rd.var(), r_rd.var()},
                {k_enc.var(), r_enc.var()},
                {k_rs.var(), r_rs.var()}});
  ModelPtr block = bb.build();

  // Interface level: eight memory-mapped commands.
  ModelBuilder tb(ctx, table ? "aes_t" : "aes_l");
  Expr addr = tb.add_state("DataAddr", Sort::bitvec(2));
  Expr len = tb.add_state("Length", Sort::bitvec(2));
  Expr key = tb.add_state("Key", Sort::bitvec(2));
  Expr ctr = tb.add_state("Ctr", Sort::bitvec(2));
  Expr st = tb.add_state("AesState", Sort::bitvec(2));
  Expr out = tb.add_state("OutReg", Sort::bitvec(2));
  Expr mem = tb.add_state("Mem", Sort::array(2, 2));
  for (const Expr& e : {addr, key, ctr, st, out})
    tb.set_init(e.var(), BvValue(0));
  tb.set_init(len.var(), BvValue(1));
  Expr in_addr = tb.add_input("InAddr", Sort::bitvec(5));
  Expr in_data = tb.add_input("InData", Sort::bitvec(2));

  auto a5 = [&c](unsigned v) { return c.bv_const(5, v); };
  tb.set_valid(c.and_all(
      {c.ule(a5(0x10), in_addr), c.ule(in_addr, a5(0x17)),
       c.implies(c.eq(in_addr, a5(0x17)), c.eq(in_data, b2(1)))}));
  Expr op = tb.set_fetch(c.concat(in_addr, in_data));
  Expr cmd = c.extract(6, 2, op);
  Expr val = c.extract(1, 0, op);
  auto at = [&](unsigned a) { return c.eq(cmd, a5(a)); };
  tb.add_instruction("WR_ADDR", at(0x10), {{addr.var(), in_data}});
  tb.add_instruction("RD_ADDR", at(0x11), {{out.var(), addr}});
  tb.add_instruction("WR_LEN", at(0x12), {{len.var(), in_data}});
  tb.add_instruction("RD_LEN", at(0x13), {{out.var(), len}});
  tb.add_instruction("WR_KEY", at(0x14), {{key.var(), in_data}});
  tb.add_instruction("RD_KEY", at(0x15), {{out.var(), key}});
  tb.add_instruction("GET_STATUS", at(0x16),
                     {{out.var(), c.ite(c.eq(st, b2(0)), b2(0), b2(1))}});
  tb.add_instruction("START_ENCRYPT",
                     c.land(at(0x17), c.eq(val, b2(1))),
                     {{st.var(), b2(1)}});
  tb.add_child(block, /*is_micro=*/true,
               {{st.var(), k_state.var()},
                {mem.var(), k_mem.var()},
                {addr.var(), k_addr.var()},
                {len.var(), k_len.var()},
                {key.var(), k_key.var()},
                {ctr.var(), k_ctr.var()}});
  return tb.build();
}

// ---------------------------------------------------------------------------
// Streaming blur accelerator.
//
// Pixels stream in row-major over a 4x4 frame; each WRITE beyond the first
// row and column emits one output pixel, the kernel applied to the 2x2
// window ending at the new pixel. READ drains the 3x3 output image. The
// kernel stays uninterpreted. The High level keeps the previous and current
// row directly; the Low level stores pixels in a two-row circular line
// buffer, moved by a micro program.

inline ModelPtr toy_stream(StreamLevel level) {
  auto ctx = std::make_shared<TermContext>();
  TermContext& c = *ctx;
  const bool high = level == StreamLevel::kHigh;
  auto b1 = [&c](unsigned v) { return c.bv_const(1, v); };
  auto b2 = [&c](unsigned v) { return c.bv_const(2, v); };
  FuncSymbol kern{"kern",
                  {Sort::bitvec(1), Sort::bitvec(1), Sort::bitvec(1),
                   Sort::bitvec(1)},
                  Sort::bitvec(1)};

  ModelBuilder b(ctx, high ? "gb_h" : "gb_l");
  b.declare_func(kern);
  Expr row = b.add_state("Row", Sort::bitvec(2));
  Expr col = b.add_state("Col", Sort::bitvec(2));
  Expr rrow = b.add_state("RRow", Sort::bitvec(2));
  Expr rcol = b.add_state("RCol", Sort::bitvec(2));
  Expr outimg = b.add_state("Out", Sort::array(4, 1));
  Expr port = b.add_state("OutPort", Sort::bitvec(1));
  for (const Expr& e : {row, col, rrow, rcol})
    b.set_init(e.var(), BvValue(0));
  b.set_init(port.var(), BvValue(0));
  Expr cmd = b.add_input("Cmd", Sort::bitvec(1));
  Expr pix = b.add_input("InPix", Sort::bitvec(1));

  b.set_valid(c.bool_const(true));
  Expr op = b.set_fetch(c.concat(cmd, pix));
  Expr is_write = c.eq(c.extract(1, 1, op), b1(0));
  Expr is_read = c.eq(c.extract(1, 1, op), b1(1));

  Expr ready = c.land(c.ule(b2(1), row), c.ule(b2(1), col));
  Expr col_m1 = c.bvsub(col, b2(1));
  Expr row_m1 = c.bvsub(row, b2(1));
  Expr out_addr = c.concat(row_m1, col_m1);
  Expr at_row_end = c.eq(col, b2(3));

  std::map<VarRef, Expr> read_next = {
      {port.var(), c.select(outimg, c.concat(rrow, rcol))},
      {rcol.var(), c.ite(c.eq(rcol, b2(2)), b2(0), c.bvadd(rcol, b2(1)))},
      {rrow.var(), c.ite(c.eq(rcol, b2(2)), c.bvadd(rrow, b2(1)), rrow)}};

  if (high) {
    Expr prev = b.add_state("PrevRow", Sort::array(2, 1));
    Expr curr = b.add_state("CurRow", Sort::array(2, 1));
    Expr ko = c.apply(kern, {c.select(prev, col_m1), c.select(prev, col),
                             c.select(curr, col_m1), pix});
    b.add_instruction(
        "WRITE", is_write,
        {{outimg.var(), c.ite(ready, c.store(outimg, out_addr, ko), outimg)},
         {curr.var(), c.store(curr, col, pix)},
         {prev.var(), c.ite(at_row_end, c.store(curr, col, pix), prev)},
         {col.var(), c.bvadd(col, b2(1))},
         {row.var(), c.ite(at_row_end, c.bvadd(row, b2(1)), row)}});
    b.add_instruction("READ", is_read, read_next);
    return b.build();
  }

  Expr lbuf = b.add_state("LineBuf", Sort::array(3, 1));
  Expr preg = b.add_state("PixReg", Sort::bitvec(1));
  Expr phase = b.add_state("Phase", Sort::bitvec(2));
  b.set_init(preg.var(), BvValue(0));
  b.set_init(phase.var(), BvValue(0));
  b.add_instruction("WRITE", is_write,
                    {{preg.var(), pix}, {phase.var(), b2(1)}});
  b.add_instruction("READ", is_read, read_next);

  // Micro program: park the pixel in the line buffer, then accumulate the
  // output pixel and advance the frame pointers.
  ModelBuilder fb(ctx, "flow");
  fb.declare_func(kern);
  Expr f_phase = fb.add_state("Phase", Sort::bitvec(2));
  Expr f_preg = fb.add_state("PixReg", Sort::bitvec(1));
  Expr f_lbuf = fb.add_state("LineBuf", Sort::array(3, 1));
  Expr f_out = fb.add_state("Out", Sort::array(4, 1));
  Expr f_row = fb.add_state("Row", Sort::bitvec(2));
  Expr f_col = fb.add_state("Col", Sort::bitvec(2));
  fb.set_init(f_phase.var(), BvValue(0));
  fb.set_init(f_preg.var(), BvValue(0));
  fb.set_init(f_row.var(), BvValue(0));
  fb.set_init(f_col.var(), BvValue(0));
  fb.set_valid(c.lor(c.eq(f_phase, b2(1)), c.eq(f_phase, b2(2))));
  Expr f_op = fb.set_fetch(f_phase);

  Expr par = c.extract(0, 0, f_row);
  Expr flip = c.bvxor(par, b1(1));
  Expr f_col_m1 = c.bvsub(f_col, b2(1));
  Expr f_ready = c.land(c.ule(b2(1), f_row), c.ule(b2(1), f_col));
  Expr f_at_end = c.eq(f_col, b2(3));
  fb.add_instruction(
      "SHIFT", c.eq(f_op, b2(1)),
      {{f_lbuf.var(), c.store(f_lbuf, c.concat(par, f_col), f_preg)},
       {f_phase.var(), b2(2)}});
  Expr f_ko = c.apply(kern, {c.select(f_lbuf, c.concat(flip, f_col_m1)),
                             c.select(f_lbuf, c.concat(flip, f_col)),
                             c.select(f_lbuf, c.concat(par, f_col_m1)),
                             f_preg});
  fb.add_instruction(
      "COMPUTE", c.eq(f_op, b2(2)),
      {{f_out.var(),
        c.ite(f_ready,
              c.store(f_out, c.concat(c.bvsub(f_row, b2(1)), f_col_m1), f_ko),
              f_out)},
       {f_col.var(), c.bvadd(f_col, b2(1))},
       {f_row.var(), c.ite(f_at_end, c.bvadd(f_row, b2(1)), f_row)},
       {f_phase.var(), b2(0)}});
  ModelPtr flow = fb.build();

  b.add_child(flow, /*is_micro=*/true,
              {{phase.var(), f_phase.var()},
               {preg.var(), f_preg.var()},
               {lbuf.var(), f_lbuf.var()},
               {outimg.var(), f_out.var()},
               {row.var(), f_row.var()},
               {col.var(), f_col.var()}});
  return b.build();
}

// ---------------------------------------------------------------------------
// Toy processor.
//
// 2-bit datapath, four registers in a register file, four-word instruction
// memory, status bits IE/PIE with a saved program counter, and an interrupt
// folded into the opcode as its highest bit. Instruction word layout:
// [8:6] op, [5:4] d, [3:2] a, [1:0] b/imm/target. Trap return restores the
// saved program counter, copies PIE into IE and sets PIE; the buggy variant
// clears PIE instead.

inline ModelPtr toy_proc(bool buggy = false) {
  auto ctx = std::make_shared<TermContext>();
  TermContext& c = *ctx;
  auto b1 = [&c](unsigned v) { return c.bv_const(1, v); };
  auto b2 = [&c](unsigned v) { return c.bv_const(2, v); };
  auto b3 = [&c](unsigned v) { return c.bv_const(3, v); };

  ModelBuilder b(ctx, "proc");
  Expr pc = b.add_state("PC", Sort::bitvec(2));
  Expr spc = b.add_state("SPC", Sort::bitvec(2));
  Expr ie = b.add_state("IE", Sort::bitvec(1));
  Expr pie = b.add_state("PIE", Sort::bitvec(1));
  Expr rf = b.add_state("RF", Sort::array(2, 2));
  Expr imem = b.add_state("IMEM", Sort::array(2, 9));
  b.set_init(pc.var(), BvValue(0));
  b.set_init(spc.var(), BvValue(0));
  b.set_init(ie.var(), BvValue(1));
  b.set_init(pie.var(), BvValue(1));
  Expr irq = b.add_input("irq", Sort::bitvec(1));

  b.set_valid(c.bool_const(true));
  Expr op = b.set_fetch(c.concat(irq, c.select(imem, pc)));
  Expr is_int = c.eq(c.extract(9, 9, op), b1(1));
  auto is_op = [&](unsigned k) {
    return c.land(c.eq(c.extract(9, 9, op), b1(0)),
                  c.eq(c.extract(8, 6, op), b3(k)));
  };

  // Updates recompute the fields from state and inputs.
  Expr iw = c.select(imem, pc);
  Expr fd = c.extract(5, 4, iw);
  Expr fa = c.extract(3, 2, iw);
  Expr fb2 = c.extract(1, 0, iw);
  Expr ra = c.select(rf, fa);
  Expr rb = c.select(rf, fb2);
  Expr pc1 = c.bvadd(pc, b2(1));

  b.add_instruction("ADD", is_op(0),
                    {{rf.var(), c.store(rf, fd, c.bvadd(ra, rb))},
                     {pc.var(), pc1}});
  b.add_instruction("XOR", is_op(1),
                    {{rf.var(), c.store(rf, fd, c.bvxor(ra, rb))},
                     {pc.var(), pc1}});
  b.add_instruction("ADDI", is_op(2),
                    {{rf.var(), c.store(rf, fd, c.bvadd(ra, fb2))},
                     {pc.var(), pc1}});
  b.add_instruction("BEQZ", is_op(3),
                    {{pc.var(), c.ite(c.eq(ra, b2(0)), fb2, pc1)}});
  b.add_instruction("JMP", is_op(4), {{pc.var(), fb2}});
  b.add_instruction("CSRR", is_op(5),
                    {{rf.var(), c.store(rf, fd, c.concat(pie, ie))},
                     {pc.var(), pc1}});
  b.add_instruction("MRET", is_op(6),
                    {{pc.var(), spc},
                     {ie.var(), pie},
                     {pie.var(), b1(buggy ? 0 : 1)}});
  b.add_instruction("NOP", is_op(7), {{pc.var(), pc1}});
  b.add_instruction("INT", is_int,
                    {{spc.var(), pc},
                     {pie.var(), ie},
                     {ie.var(), b1(0)},
                     {pc.var(), b2(0)}});
  return b.build();
}

/// Two-stage pipelined implementation of toy_proc as a single-instruction
/// model: fetch into a latch (iw, ipc, iv), execute from the latch with a
/// one-entry write-back buffer (wv, wreg, wval) drained into the register
/// file the following cycle; operands bypass from the buffer. Interrupts
/// preempt at the execute stage and squash the latch.
inline ModelPtr toy_proc_fsm(bool buggy = false) {
  auto ctx = std::make_shared<TermContext>();
  TermContext& c = *ctx;
  auto b1 = [&c](unsigned v) { return c.bv_const(1, v); };
  auto b2 = [&c](unsigned v) { return c.bv_const(2, v); };
  auto b3 = [&c](unsigned v) { return c.bv_const(3, v); };

  ModelBuilder b(ctx, "procfsm");
  Expr fpc = b.add_state("fpc", Sort::bitvec(2));
  Expr iw = b.add_state("iw", Sort::bitvec(9));
  Expr ipc = b.add_state("ipc", Sort::bitvec(2));
  Expr iv = b.add_state("iv", Sort::bitvec(1));
  Expr wv = b.add_state("wv", Sort::bitvec(1));
  Expr wreg = b.add_state("wreg", Sort::bitvec(2));
  Expr wval = b.add_state("wval", Sort::bitvec(2));
  Expr rf = b.add_state("RF", Sort::array(2, 2));
  Expr imem = b.add_state("IMEM", Sort::array(2, 9));
  Expr spc = b.add_state("SPC", Sort::bitvec(2));
  Expr ie = b.add_state("IE", Sort::bitvec(1));
  Expr pie = b.add_state("PIE", Sort::bitvec(1));
  b.set_init(fpc.var(), BvValue(0));
  b.set_init(iw.var(), BvValue(0));
  b.set_init(ipc.var(), BvValue(0));
  b.set_init(iv.var(), BvValue(0));
  b.set_init(wv.var(), BvValue(0));
  b.set_init(wreg.var(), BvValue(0));
  b.set_init(wval.var(), BvValue(0));
  b.set_init(spc.var(), BvValue(0));
  b.set_init(ie.var(), BvValue(1));
  b.set_init(pie.var(), BvValue(1));
  Expr irq = b.add_input("irq", Sort::bitvec(1));

  b.set_valid(c.bool_const(true));
  b.set_fetch(c.bv_const(1, 0));

  Expr intnow = c.eq(irq, b1(1));
  Expr opf = c.extract(8, 6, iw);
  Expr fd = c.extract(5, 4, iw);
  Expr fa = c.extract(3, 2, iw);
  Expr fbv = c.extract(1, 0, iw);
  auto is = [&](unsigned k) { return c.eq(opf, b3(k)); };
  auto bypass = [&](Expr r) {
    return c.ite(c.land(c.eq(wv, b1(1)), c.eq(wreg, r)), wval,
                 c.select(rf, r));
  };
  Expr ra = bypass(fa);
  Expr rb = bypass(fbv);
  Expr exec = c.land(c.eq(iv, b1(1)), c.lnot(intnow));
  Expr taken = c.land(is(3), c.eq(ra, b2(0)));
  Expr curpc = c.ite(c.eq(iv, b1(1)), ipc, fpc);

  Expr redirect =
      c.lor(intnow, c.land(exec, c.or_all({is(4), taken, is(6)})));
  Expr rtarget = c.ite(intnow, b2(0), c.ite(is(6), spc, fbv));
  Expr writes_reg = c.or_all({is(0), is(1), is(2), is(5)});
  Expr result = c.ite(is(0), c.bvadd(ra, rb),
                      c.ite(is(1), c.bvxor(ra, rb),
                            c.ite(is(2), c.bvadd(ra, fbv),
                                  c.concat(pie, ie))));

  std::map<VarRef, Expr> next;
  next[rf.var()] = c.ite(c.eq(wv, b1(1)), c.store(rf, wreg, wval), rf);
  next[wv.var()] = c.ite(c.land(exec, writes_reg), b1(1), b1(0));
  next[wreg.var()] = fd;
  next[wval.var()] = result;
  next[spc.var()] = c.ite(intnow, curpc, spc);
  next[ie.var()] = c.ite(intnow, b1(0), c.ite(c.land(exec, is(6)), pie, ie));
  next[pie.var()] = c.ite(intnow, ie,
                          c.ite(c.land(exec, is(6)), b1(buggy ? 0 : 1), pie));
  next[fpc.var()] = c.ite(redirect, rtarget, c.bvadd(fpc, b2(1)));
  next[iv.var()] = c.ite(redirect, b1(0), b1(1));
  next[iw.var()] = c.select(imem, fpc);
  next[ipc.var()] = fpc;

  b.add_instruction("CYCLE", c.bool_const(true), std::move(next));
  return b.build();
}

}  // namespace ila::bundled

#endif  // ILA_BUNDLED_HPP_
